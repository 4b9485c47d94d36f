//! Lexical-form checks for the XSD datatypes the consistency metric inspects.

use chrono::{NaiveDate, NaiveDateTime};

use crate::vocab::ns;

/// `Some(valid)` for checkable datatypes, `None` for everything else.
pub fn lexical_form_is_valid(datatype: &str, lexical: &str) -> Option<bool> {
    Some(match datatype {
        ns::XSD_INTEGER => is_integer(lexical),
        ns::XSD_DECIMAL => is_decimal(lexical),
        ns::XSD_DOUBLE => is_double(lexical),
        ns::XSD_BOOLEAN => matches!(lexical, "true" | "false" | "1" | "0"),
        ns::XSD_DATE => is_date(lexical),
        ns::XSD_DATE_TIME => is_date_time(lexical),
        _ => return None,
    })
}

fn strip_sign(s: &str) -> &str {
    s.strip_prefix(['+', '-']).unwrap_or(s)
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn is_integer(s: &str) -> bool {
    all_digits(strip_sign(s))
}

fn is_decimal(s: &str) -> bool {
    let body = strip_sign(s);
    match body.split_once('.') {
        None => all_digits(body),
        Some((int, frac)) => {
            (int.is_empty() || all_digits(int))
                && (frac.is_empty() || all_digits(frac))
                && !(int.is_empty() && frac.is_empty())
        }
    }
}

fn is_double(s: &str) -> bool {
    if matches!(s, "INF" | "+INF" | "-INF" | "NaN") {
        return true;
    }
    match s.split_once(['e', 'E']) {
        None => is_decimal(s),
        Some((mantissa, exp)) => is_decimal(mantissa) && is_integer(exp),
    }
}

/// Splits an optional `Z` or `±hh:mm` timezone suffix off.
fn split_timezone(s: &str) -> Option<&str> {
    if let Some(rest) = s.strip_suffix('Z') {
        return Some(rest);
    }
    if s.len() > 6 {
        let (rest, tz) = s.split_at(s.len() - 6);
        let b = tz.as_bytes();
        if (b[0] == b'+' || b[0] == b'-') && b[3] == b':' {
            let hh = &tz[1..3];
            let mm = &tz[4..6];
            if !all_digits(hh) || !all_digits(mm) {
                return None;
            }
            let (h, m): (u32, u32) = (hh.parse().ok()?, mm.parse().ok()?);
            return (h < 14 && m < 60 || h == 14 && m == 0).then_some(rest);
        }
    }
    Some(s)
}

fn year_ok(date: &str) -> bool {
    let body = date.strip_prefix('-').unwrap_or(date);
    body.split('-').next().is_some_and(|y| y.len() >= 4 && all_digits(y))
}

fn is_date(s: &str) -> bool {
    let Some(date) = split_timezone(s) else {
        return false;
    };
    year_ok(date) && date.len() >= 10 && NaiveDate::parse_from_str(date, "%Y-%m-%d").is_ok()
}

fn is_date_time(s: &str) -> bool {
    let Some(dt) = split_timezone(s) else {
        return false;
    };
    let Some((date, time)) = dt.split_once('T') else {
        return false;
    };
    if !year_ok(date) || time.len() < 8 || time.as_bytes()[2] != b':' || time.as_bytes()[5] != b':' {
        return false;
    }
    if let Some((_, frac)) = time.split_once('.') {
        if !all_digits(frac) {
            return false;
        }
    }
    NaiveDateTime::parse_from_str(dt, "%Y-%m-%dT%H:%M:%S%.f").is_ok()
}
