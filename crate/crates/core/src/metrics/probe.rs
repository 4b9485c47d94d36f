//! HTTP probing with manual redirect handling, retries and bounded parallelism.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use url::Url;

use super::ProbeSettings;
use crate::rdf::{parse_document_with_base, RdfFormat};

/// Accept header used when dereferencing resources.
pub const ACCEPT_RDF: &str = "text/turtle, application/trig;q=0.9, application/n-triples;q=0.8";
/// Accept header used for SPARQL protocol requests.
pub const ACCEPT_SPARQL_RESULTS: &str =
    "application/sparql-results+json, application/sparql-results+xml;q=0.9";

const MAX_REDIRECTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawResponse {
    pub status: u16,
    pub location: Option<String>,
    pub content_type: Option<String>,
    pub body: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransportError {
    Timeout,
    Connect(String),
}

/// A single HTTP GET without redirect handling.
pub trait HttpTransport: Sync {
    fn get(&self, url: &Url, accept: &str, timeout: Duration) -> Result<RawResponse, TransportError>;
}

/// Blocking reqwest client with redirects disabled.
pub struct ReqwestTransport {
    client: reqwest::blocking::Client,
}

impl ReqwestTransport {
    pub fn new(settings: &ProbeSettings) -> Result<Self, String> {
        let client = reqwest::blocking::Client::builder()
            .connect_timeout(settings.connect_timeout)
            .redirect(reqwest::redirect::Policy::none())
            .user_agent(concat!("qualcube/", env!("CARGO_PKG_VERSION")))
            .build()
            .map_err(|e| e.to_string())?;
        Ok(ReqwestTransport { client })
    }
}

impl HttpTransport for ReqwestTransport {
    fn get(&self, url: &Url, accept: &str, timeout: Duration) -> Result<RawResponse, TransportError> {
        let classify = |e: reqwest::Error| {
            if e.is_timeout() {
                TransportError::Timeout
            } else {
                TransportError::Connect(e.to_string())
            }
        };
        let resp = self
            .client
            .get(url.clone())
            .header(reqwest::header::ACCEPT, accept)
            .timeout(timeout)
            .send()
            .map_err(classify)?;
        let header = |name| {
            resp.headers()
                .get(name)
                .and_then(|v| v.to_str().ok())
                .map(str::to_owned)
        };
        let status = resp.status().as_u16();
        let location = header(reqwest::header::LOCATION);
        let content_type = header(reqwest::header::CONTENT_TYPE);
        let body = resp.bytes().map_err(classify)?.to_vec();
        Ok(RawResponse {
            status,
            location,
            content_type,
            body,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbeStatus {
    Ok,
    HttpError(u16),
    Timeout,
    ConnectFailure,
    UnparseableBody,
}

impl fmt::Display for ProbeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeStatus::Ok => f.write_str("ok"),
            ProbeStatus::HttpError(code) => write!(f, "HTTP {code}"),
            ProbeStatus::Timeout => f.write_str("timeout"),
            ProbeStatus::ConnectFailure => f.write_str("connection failed"),
            ProbeStatus::UnparseableBody => f.write_str("unparseable body"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeOutcome {
    pub url: String,
    pub status: ProbeStatus,
    /// `None` only when the connection was never established.
    pub latency: Option<Duration>,
    pub media_type: Option<String>,
    pub detail: Option<String>,
    /// For SPARQL probes, the boolean answer.
    pub answer: Option<bool>,
}

impl ProbeOutcome {
    fn failed(url: &str, status: ProbeStatus, latency: Option<Duration>, detail: impl Into<String>) -> Self {
        ProbeOutcome {
            url: url.to_owned(),
            status,
            latency,
            media_type: None,
            detail: Some(detail.into()),
            answer: None,
        }
    }

    /// Short explanation suitable for an observation's detail.
    pub fn describe(&self) -> String {
        match &self.detail {
            Some(d) => d.clone(),
            None => self.status.to_string(),
        }
    }
}

/// What a successful response body must contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyCheck {
    /// Any response with a 2xx status.
    None,
    /// An RDF document in a negotiated syntax.
    Rdf,
    /// A SPARQL boolean result document.
    SparqlBoolean,
}

fn media_type(content_type: Option<&str>) -> Option<String> {
    content_type.map(|ct| ct.split(';').next().unwrap_or("").trim().to_ascii_lowercase())
}

fn sparql_boolean(media: Option<&str>, body: &[u8]) -> Option<bool> {
    let json = || {
        serde_json::from_slice::<serde_json::Value>(body)
            .ok()?
            .get("boolean")?
            .as_bool()
    };
    let xml = || {
        let text = std::str::from_utf8(body).ok()?;
        let start = text.find("<boolean>")? + "<boolean>".len();
        let end = start + text[start..].find("</boolean>")?;
        match text[start..end].trim() {
            "true" => Some(true),
            "false" => Some(false),
            _ => None,
        }
    };
    match media {
        Some(m) if m.contains("json") => json(),
        Some(m) if m.contains("xml") => xml(),
        _ => json().or_else(xml),
    }
}

/// Fetches `url`, following up to five redirects within one deadline per
/// attempt, and retrying timeouts and connection failures.
pub fn probe_http(
    transport: &dyn HttpTransport,
    url: &str,
    accept: &str,
    check: BodyCheck,
    settings: &ProbeSettings,
) -> ProbeOutcome {
    let parsed = match Url::parse(url) {
        Ok(u) if matches!(u.scheme(), "http" | "https") => u,
        Ok(u) => {
            return ProbeOutcome::failed(url, ProbeStatus::ConnectFailure, None, format!("unsupported scheme {}", u.scheme()))
        }
        Err(e) => return ProbeOutcome::failed(url, ProbeStatus::ConnectFailure, None, format!("invalid URL: {e}")),
    };
    let mut attempt = 0;
    loop {
        let outcome = probe_once(transport, url, &parsed, accept, check, settings);
        let retryable = matches!(outcome.status, ProbeStatus::Timeout | ProbeStatus::ConnectFailure);
        if !retryable || attempt >= settings.retry_count {
            return outcome;
        }
        attempt += 1;
    }
}

fn probe_once(
    transport: &dyn HttpTransport,
    original: &str,
    url: &Url,
    accept: &str,
    check: BodyCheck,
    settings: &ProbeSettings,
) -> ProbeOutcome {
    let start = Instant::now();
    let mut current = url.clone();
    for hop in 0..=MAX_REDIRECTS {
        let remaining = settings.request_timeout.saturating_sub(start.elapsed());
        if remaining.is_zero() {
            return ProbeOutcome::failed(original, ProbeStatus::Timeout, Some(start.elapsed()), "timeout");
        }
        let resp = match transport.get(&current, accept, remaining) {
            Ok(r) => r,
            Err(TransportError::Timeout) => {
                return ProbeOutcome::failed(original, ProbeStatus::Timeout, Some(start.elapsed()), "timeout")
            }
            Err(TransportError::Connect(msg)) => {
                let latency = (hop > 0).then(|| start.elapsed());
                return ProbeOutcome::failed(original, ProbeStatus::ConnectFailure, latency, msg);
            }
        };
        let latency = Some(start.elapsed());
        if matches!(resp.status, 301 | 302 | 303 | 307 | 308) {
            if hop == MAX_REDIRECTS {
                return ProbeOutcome::failed(original, ProbeStatus::HttpError(resp.status), latency, "redirect limit");
            }
            let next = resp.location.as_deref().and_then(|l| current.join(l).ok());
            match next {
                Some(n) => {
                    current = n;
                    continue;
                }
                None => {
                    return ProbeOutcome::failed(
                        original,
                        ProbeStatus::HttpError(resp.status),
                        latency,
                        "redirect without usable Location",
                    )
                }
            }
        }
        let media = media_type(resp.content_type.as_deref());
        if !(200..300).contains(&resp.status) {
            let mut out = ProbeOutcome::failed(original, ProbeStatus::HttpError(resp.status), latency, format!("HTTP {}", resp.status));
            out.media_type = media;
            return out;
        }
        let (status, answer, detail) = match check {
            BodyCheck::None => (ProbeStatus::Ok, None, None),
            BodyCheck::Rdf => {
                match media.as_deref().and_then(RdfFormat::from_media_type) {
                    None => (
                        ProbeStatus::UnparseableBody,
                        None,
                        Some(format!("not an RDF media type: {}", media.as_deref().unwrap_or("none"))),
                    ),
                    Some(format) => match parse_document_with_base(&resp.body, format, Some(current.as_str())) {
                        Ok(_) => (ProbeStatus::Ok, None, None),
                        Err(e) => (ProbeStatus::UnparseableBody, None, Some(format!("unparseable body: {e}"))),
                    },
                }
            }
            BodyCheck::SparqlBoolean => match sparql_boolean(media.as_deref(), &resp.body) {
                Some(b) => (ProbeStatus::Ok, Some(b), None),
                None => (ProbeStatus::UnparseableBody, None, Some("no boolean result".to_owned())),
            },
        };
        return ProbeOutcome {
            url: original.to_owned(),
            status,
            latency,
            media_type: media,
            detail,
            answer,
        };
    }
    unreachable!("loop returns on the last hop")
}

/// Probes every URL with at most `max_parallel_probes` in flight; results
/// come back in input order.
pub fn probe_many(
    transport: &dyn HttpTransport,
    urls: &[String],
    accept: &str,
    check: BodyCheck,
    settings: &ProbeSettings,
) -> Vec<ProbeOutcome> {
    let requests: Vec<(&str, &str, BodyCheck)> = urls.iter().map(|u| (u.as_str(), accept, check)).collect();
    probe_batch(transport, &requests, settings)
}

pub(crate) fn probe_batch(
    transport: &dyn HttpTransport,
    requests: &[(&str, &str, BodyCheck)],
    settings: &ProbeSettings,
) -> Vec<ProbeOutcome> {
    let results: Mutex<Vec<Option<ProbeOutcome>>> = Mutex::new(vec![None; requests.len()]);
    let next = AtomicUsize::new(0);
    let workers = settings.max_parallel_probes.max(1).min(requests.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(url, accept, check)) = requests.get(i) else {
                    break;
                };
                let outcome = probe_http(transport, url, accept, check, settings);
                results.lock().expect("probe result lock")[i] = Some(outcome);
            });
        }
    });
    results
        .into_inner()
        .expect("probe result lock")
        .into_iter()
        .map(|o| o.expect("every request probed"))
        .collect()
}
