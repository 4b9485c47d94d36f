//! Brute-force recounts over canonical N-Quads text. Nothing here goes
//! through the library's term model: lines are split with regular
//! expressions and every figure is recomputed from scratch in two passes.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use regex::Regex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obj {
    Iri(String),
    Blank(String),
    Literal {
        lexical: String,
        datatype: Option<String>,
        lang: Option<String>,
    },
}

#[derive(Debug, Clone)]
pub struct Line {
    pub subject: String,
    pub predicate: String,
    pub object: Obj,
    pub graph: Option<String>,
}

const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";

fn line_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r#"^(<[^>]*>|_:\S+) <([^>]*)> (<([^>]*)>|_:(\S+)|"((?:[^"\\]|\\.)*)"(?:@([A-Za-z0-9-]+)|\^\^<([^>]*)>)?)(?: <([^>]*)>)? \.$"#,
        )
        .unwrap()
    })
}

fn unescape(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some('u') => {
                let hex: String = chars.by_ref().take(4).collect();
                out.extend(char::from_u32(u32::from_str_radix(&hex, 16).unwrap()));
            }
            Some('U') => {
                let hex: String = chars.by_ref().take(8).collect();
                out.extend(char::from_u32(u32::from_str_radix(&hex, 16).unwrap()));
            }
            Some(other) => out.push(other),
            None => {}
        }
    }
    out
}

pub fn lines(nquads: &str) -> Vec<Line> {
    nquads
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let c = line_re().captures(l).unwrap_or_else(|| panic!("unrecognized line {l:?}"));
            let object = if let Some(iri) = c.get(4) {
                Obj::Iri(iri.as_str().to_owned())
            } else if let Some(b) = c.get(5) {
                Obj::Blank(b.as_str().to_owned())
            } else {
                Obj::Literal {
                    lexical: unescape(c.get(6).unwrap().as_str()),
                    lang: c.get(7).map(|m| m.as_str().to_owned()),
                    datatype: c.get(8).map(|m| m.as_str().to_owned()),
                }
            };
            Line {
                subject: c[1].to_owned(),
                predicate: c[2].to_owned(),
                object,
                graph: c.get(9).map(|m| m.as_str().to_owned()),
            }
        })
        .collect()
}

fn days_in_month(year: i64, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if (year % 4 == 0 && year % 100 != 0) || year % 400 == 0 => 29,
        2 => 28,
        _ => 0,
    }
}

fn date_ok(y: &str, m: &str, d: &str) -> bool {
    let (y, m, d): (i64, u32, u32) = (y.parse().unwrap(), m.parse().unwrap(), d.parse().unwrap());
    (1..=12).contains(&m) && d >= 1 && d <= days_in_month(y, m)
}

fn tz_ok(tz: Option<regex::Match>) -> bool {
    let Some(tz) = tz.map(|m| m.as_str()) else { return true };
    if tz == "Z" {
        return true;
    }
    let h: u32 = tz[1..3].parse().unwrap();
    let m: u32 = tz[4..6].parse().unwrap();
    (h < 14 && m < 60) || (h == 14 && m == 0)
}

/// `Some(valid)` for the six checked XSD datatypes.
pub fn lexically_valid(datatype: &str, lexical: &str) -> Option<bool> {
    static RES: OnceLock<[Regex; 6]> = OnceLock::new();
    let [int, dec, dbl, boolean, date, dt] = RES.get_or_init(|| {
        [
            Regex::new(r"^[+-]?[0-9]+$").unwrap(),
            Regex::new(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$").unwrap(),
            Regex::new(r"^([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?|[+-]?INF|NaN)$").unwrap(),
            Regex::new(r"^(true|false|1|0)$").unwrap(),
            Regex::new(r"^(-?[0-9]{4,})-([0-9]{2})-([0-9]{2})(Z|[+-][0-9]{2}:[0-9]{2})?$").unwrap(),
            Regex::new(
                r"^(-?[0-9]{4,})-([0-9]{2})-([0-9]{2})T([0-9]{2}):([0-9]{2}):([0-9]{2})(\.[0-9]+)?(Z|[+-][0-9]{2}:[0-9]{2})?$",
            )
            .unwrap(),
        ]
    });
    let local = datatype.strip_prefix(XSD)?;
    Some(match local {
        "integer" => int.is_match(lexical),
        "decimal" => dec.is_match(lexical),
        "double" => dbl.is_match(lexical),
        "boolean" => boolean.is_match(lexical),
        "date" => date
            .captures(lexical)
            .is_some_and(|c| date_ok(&c[1], &c[2], &c[3]) && tz_ok(c.get(4))),
        "dateTime" => dt.captures(lexical).is_some_and(|c| {
            let (h, m, s): (u32, u32, u32) = (c[4].parse().unwrap(), c[5].parse().unwrap(), c[6].parse().unwrap());
            date_ok(&c[1], &c[2], &c[3]) && h < 24 && m < 60 && s < 60 && tz_ok(c.get(8))
        }),
        _ => return None,
    })
}

/// `host:port` with the scheme's default port; `None` without an authority.
pub fn authority(iri: &str) -> Option<String> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r"^([A-Za-z][A-Za-z0-9+.-]*)://(?:[^@/]*@)?([^/:?#]+)(?::([0-9]+))?").unwrap());
    let c = re.captures(iri)?;
    let scheme = c[1].to_ascii_lowercase();
    let port = match c.get(3) {
        Some(p) => p.as_str().parse::<u16>().ok()?.to_string(),
        None => match scheme.as_str() {
            "http" => "80".into(),
            "https" => "443".into(),
            _ => return Some(c[2].to_ascii_lowercase()),
        },
    };
    Some(format!("{}:{port}", c[2].to_ascii_lowercase()))
}

fn iri_subject(l: &Line) -> Option<&str> {
    l.subject.strip_prefix('<').and_then(|s| s.strip_suffix('>'))
}

pub fn datatype_consistency(nquads: &str) -> f64 {
    let ls = lines(nquads);
    // pass 1: which lines are checkable
    let checkable: Vec<bool> = ls
        .iter()
        .map(|l| match &l.object {
            Obj::Literal {
                datatype: Some(dt),
                lexical,
                ..
            } => lexically_valid(dt, lexical).is_some(),
            _ => false,
        })
        .collect();
    // pass 2: count the valid ones
    let total = checkable.iter().filter(|c| **c).count();
    let valid = ls
        .iter()
        .zip(&checkable)
        .filter(|(_, c)| **c)
        .filter(|(l, _)| match &l.object {
            Obj::Literal {
                datatype: Some(dt),
                lexical,
                ..
            } => lexically_valid(dt, lexical) == Some(true),
            _ => false,
        })
        .count();
    if total == 0 {
        1.0
    } else {
        valid as f64 / total as f64
    }
}

pub fn labeled_ratio(nquads: &str) -> f64 {
    let ls = lines(nquads);
    let subjects: BTreeSet<&str> = ls.iter().filter_map(iri_subject).collect();
    let labeled = subjects
        .iter()
        .filter(|s| ls.iter().any(|l| iri_subject(l) == Some(**s) && l.predicate == RDFS_LABEL))
        .count();
    if subjects.is_empty() {
        1.0
    } else {
        labeled as f64 / subjects.len() as f64
    }
}

pub fn external_linkage(nquads: &str, home: &str) -> f64 {
    let ls = lines(nquads);
    let objects: BTreeSet<&str> = ls
        .iter()
        .filter_map(|l| match &l.object {
            Obj::Iri(i) => Some(i.as_str()),
            _ => None,
        })
        .collect();
    let home = authority(home);
    let external = objects.iter().filter(|o| authority(o) != home).count();
    if objects.is_empty() {
        0.0
    } else {
        external as f64 / objects.len() as f64
    }
}

pub fn local_subjects(nquads: &str, home: &str) -> BTreeSet<String> {
    let Some(home) = authority(home) else {
        return BTreeSet::new();
    };
    lines(nquads)
        .iter()
        .filter_map(iri_subject)
        .filter(|s| authority(s).as_deref() == Some(home.as_str()))
        .map(str::to_owned)
        .collect()
}
