use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use chrono::{DateTime, Utc};

use qualcube::analytics::{
    group_by_class, observations, rank, six_star, trend, ObservationRecord, RankingProfile,
};
use qualcube::charts::{export_csv, format_value, render_svg, ChartKind, ChartSpec};
use qualcube::metrics::{
    assess, implemented_metric_classes, AssessmentJob, JobError, MetricError, ProbeSettings, ReqwestTransport,
};
use qualcube::rdf::{parse_document, serialize, NamedNode, QuadDataset, RdfFormat};
use qualcube::store::{build_quality_graph, merge_runs, validate, BuildError};
use qualcube::vocab::{
    builtin_daq_tbox, dsd_definition, load_extension, ns, shipped_catalog, shipped_descriptors, MetricDescriptor,
    TBox,
};

use crate::config::{load_toml, Config, ConfigError, RankingConfig, ThresholdsFile};
use crate::{Cli, Command, Common, ExtendCommand, ReportFormat, VocabCommand};

const OFFLINE_METRICS: [&str; 3] = [
    ns::DQM_DATATYPE_CONSISTENCY,
    ns::DQM_LABELED_RESOURCES,
    ns::DQM_EXTERNAL_LINKAGE,
];

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration content.
    Usage(String),
    /// Unreadable input, unwritable output, or unusable network settings.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io(..) => CliError::Io(e.to_string()),
            ConfigError::Parse(..) => CliError::Usage(e.to_string()),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

type Outcome = Result<u8, CliError>;

struct Ctx {
    flags: Common,
    config: Config,
}

pub fn run(cli: Cli) -> Outcome {
    let config = match &cli.common.config {
        Some(path) => load_toml::<Config>(path)?,
        None => Config::default(),
    };
    let ctx = Ctx {
        flags: cli.common,
        config,
    };
    match cli.command {
        Command::Assess => ctx.assess(),
        Command::Validate { report } => ctx.validate(report),
        Command::Group { class, group_iri } => ctx.group(&class, group_iri.as_deref()),
        Command::Rank => ctx.rank(),
        Command::Trend { class } => ctx.trend(&class),
        Command::Stars { base_stars } => ctx.stars(base_stars),
        Command::Chart { csv } => ctx.chart(csv.as_deref()),
        Command::Merge => ctx.merge(),
        Command::Vocab(VocabCommand::Dump) => ctx.vocab_dump(),
        Command::Extend(ExtendCommand::Check) => ctx.extend_check(),
    }
}

/// Full IRI, or a CURIE over the well-known prefixes.
pub fn expand_iri(s: &str) -> Result<NamedNode, CliError> {
    let s = s.trim();
    let s = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')).unwrap_or(s);
    if let Some((prefix, local)) = s.split_once(':') {
        if !local.starts_with("//") {
            if let Some((_, namespace)) = ns::PREFIXES.iter().find(|(p, _)| *p == prefix) {
                return Ok(NamedNode::new_unchecked(format!("{namespace}{local}")));
            }
        }
    }
    NamedNode::new(s).map_err(|e| CliError::Usage(format!("{s:?} is not an IRI or known CURIE: {e}")))
}

fn read_rdf(path: &Path) -> Result<QuadDataset, CliError> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or_default();
    let Some(format) = RdfFormat::from_extension(ext) else {
        return usage(format!(
            "cannot tell the RDF format of {} (expected .ttl, .trig, .nq or .nt)",
            path.display()
        ));
    };
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&bytes, format).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
        }
    }
}

fn with_prefixes(mut data: QuadDataset) -> QuadDataset {
    for (p, iri) in ns::PREFIXES {
        data.set_prefix(*p, *iri);
    }
    data
}

/// Distinct `computedOn` values, ordered by first observation time, then IRI.
fn versions_in(records: &[ObservationRecord]) -> Vec<NamedNode> {
    let mut first: BTreeMap<&NamedNode, DateTime<Utc>> = BTreeMap::new();
    for r in records {
        let e = first.entry(&r.computed_on).or_insert(r.timestamp);
        *e = (*e).min(r.timestamp);
    }
    let mut out: Vec<(DateTime<Utc>, NamedNode)> = first.into_iter().map(|(v, t)| (t, v.clone())).collect();
    out.sort();
    out.into_iter().map(|(_, v)| v).collect()
}

impl Ctx {
    fn inputs(&self) -> Result<Vec<PathBuf>, CliError> {
        let paths = if self.flags.input.is_empty() {
            self.config.input.iter().cloned().collect()
        } else {
            self.flags.input.clone()
        };
        if paths.is_empty() {
            return usage("no --input given");
        }
        Ok(paths)
    }

    fn read_inputs(&self) -> Result<QuadDataset, CliError> {
        let mut data = QuadDataset::new();
        for p in self.inputs()? {
            data.extend_from(&read_rdf(&p)?);
        }
        Ok(data)
    }

    fn output(&self) -> Option<&Path> {
        self.flags.output.as_deref().or(self.config.output.as_deref())
    }

    fn format(&self, default: RdfFormat) -> Result<RdfFormat, CliError> {
        if let Some(f) = self.flags.format {
            return Ok(f.into());
        }
        match &self.config.format {
            Some(s) => RdfFormat::from_extension(s).ok_or_else(|| CliError::Usage(format!("unknown format {s:?}"))),
            None => Ok(default),
        }
    }

    fn emit(&self, data: &QuadDataset, default: RdfFormat) -> Result<(), CliError> {
        let bytes = serialize(data, self.format(default)?).map_err(|e| CliError::Usage(e.to_string()))?;
        write_bytes(self.output(), &bytes)
    }

    fn computed_on(&self) -> Result<Vec<NamedNode>, CliError> {
        if !self.flags.computed_on.is_empty() {
            return self.flags.computed_on.iter().map(|s| expand_iri(s)).collect();
        }
        self.config.computed_on.iter().map(|s| expand_iri(s)).collect()
    }

    fn single_computed_on(&self) -> Result<NamedNode, CliError> {
        match self.computed_on()?.as_slice() {
            [one] => Ok(one.clone()),
            [] => usage("--computed-on is required"),
            _ => usage("exactly one --computed-on is expected"),
        }
    }

    fn graph_iri(&self) -> Result<Option<NamedNode>, CliError> {
        self.flags
            .graph_iri
            .as_ref()
            .or(self.config.graph_iri.as_ref())
            .map(|s| expand_iri(s))
            .transpose()
    }

    fn clock(&self) -> Result<DateTime<Utc>, CliError> {
        match self.flags.clock.as_ref().or(self.config.clock.as_ref()) {
            Some(s) => DateTime::parse_from_rfc3339(s)
                .map(|t| t.with_timezone(&Utc))
                .map_err(|e| CliError::Usage(format!("--clock {s:?} is not an RFC 3339 timestamp: {e}"))),
            None => Ok(Utc::now()),
        }
    }

    fn probe_settings(&self) -> ProbeSettings {
        let p = &self.config.probe;
        let d = ProbeSettings::default();
        ProbeSettings {
            connect_timeout: p.connect_timeout_ms.map_or(d.connect_timeout, Duration::from_millis),
            request_timeout: p.request_timeout_ms.map_or(d.request_timeout, Duration::from_millis),
            max_parallel_probes: p.max_parallel_probes.unwrap_or(d.max_parallel_probes),
            max_sample_size: p.max_sample_size.unwrap_or(d.max_sample_size),
            retry_count: p.retry_count.unwrap_or(d.retry_count),
            endpoint_url: self.flags.endpoint.clone().or_else(|| p.endpoint.clone()),
            seed: self.flags.seed.or(self.config.seed).unwrap_or(d.seed),
        }
    }

    /// Shipped vocabulary plus any extensions, with their metric descriptors.
    fn vocabulary(&self) -> Result<(Vec<MetricDescriptor>, TBox), CliError> {
        let (mut descriptors, mut tbox) = shipped_descriptors();
        let paths = if self.flags.extension.is_empty() {
            &self.config.extensions
        } else {
            &self.flags.extension
        };
        for p in paths {
            let ext = read_rdf(p)?;
            (descriptors, tbox) =
                load_extension(&ext, &tbox).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        }
        Ok((descriptors, tbox))
    }

    /// Vocabulary extended with whatever schema statements the data carries.
    fn analysis_tbox(&self, data: &QuadDataset) -> Result<TBox, CliError> {
        let (_, mut tbox) = self.vocabulary()?;
        tbox.merge(&TBox::from_dataset(data));
        Ok(tbox.closure())
    }

    fn metric_list(&self) -> Vec<String> {
        if !self.flags.metrics.is_empty() {
            self.flags.metrics.clone()
        } else {
            self.config.metrics.clone().unwrap_or_default()
        }
    }

    fn selected_metrics(
        &self,
        descriptors: &[MetricDescriptor],
        settings: &ProbeSettings,
    ) -> Result<Vec<MetricDescriptor>, CliError> {
        let endpoint_metrics = [ns::DQM_ENDPOINT_AVAILABILITY, ns::DQM_ENDPOINT_LATENCY];
        let mut classes: Vec<NamedNode> = Vec::new();
        let mut list = self.metric_list();
        if list.is_empty() {
            list.push("offline".into());
        }
        for item in &list {
            match item.trim() {
                "offline" => classes.extend(OFFLINE_METRICS.iter().map(|c| NamedNode::new_unchecked(*c))),
                "all" => classes.extend(
                    implemented_metric_classes()
                        .iter()
                        .filter(|c| settings.endpoint_url.is_some() || !endpoint_metrics.contains(c))
                        .map(|c| NamedNode::new_unchecked(*c)),
                ),
                other => classes.push(expand_iri(other)?),
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for class in classes {
            if !seen.insert(class.clone()) {
                continue;
            }
            if settings.endpoint_url.is_none() && endpoint_metrics.contains(&class.as_str()) {
                return Err(CliError::Io(format!(
                    "{} needs a SPARQL endpoint (--endpoint or [probe] endpoint)",
                    class
                )));
            }
            match descriptors.iter().find(|d| d.metric_class == class) {
                Some(d) => out.push(d.clone()),
                None => return usage(format!("unknown metric class {class}")),
            }
        }
        Ok(out)
    }

    fn assess(&self) -> Outcome {
        let target = self.read_inputs()?;
        let computed_on = self.single_computed_on()?;
        let graph = match self.graph_iri()? {
            Some(g) => g,
            None => NamedNode::new_unchecked(format!("{}/quality", computed_on.as_str().trim_end_matches('/'))),
        };
        let (descriptors, _) = self.vocabulary()?;
        let settings = self.probe_settings();
        let metrics = self.selected_metrics(&descriptors, &settings)?;
        let timestamp = self.clock()?;
        let transport = ReqwestTransport::new(&settings).map_err(CliError::Io)?;
        let job = AssessmentJob::new(target, computed_on.clone(), metrics, timestamp, settings).map_err(|e| match e {
            JobError::NoMetrics => CliError::Usage(e.to_string()),
            JobError::InvalidSettings(_) => CliError::Io(e.to_string()),
        })?;

        let mut results = Vec::new();
        for outcome in assess(&job, &transport) {
            let name = outcome.descriptor.display_name().to_owned();
            match outcome.result {
                Ok(r) => {
                    match &r.detail {
                        Some(d) => eprintln!("{name}: {} ({d})", r.value.lexical()),
                        None => eprintln!("{name}: {}", r.value.lexical()),
                    }
                    results.push((outcome.descriptor, r));
                }
                Err(e @ MetricError::NotConfigured(_)) => return Err(CliError::Io(format!("{name}: {e}"))),
                Err(e) => eprintln!("warning: {name} not recorded: {e}"),
            }
        }
        let quality = build_quality_graph(&results, &computed_on, &timestamp, &graph).map_err(|e| match e {
            BuildError::DuplicateMetric(_) => CliError::Usage(e.to_string()),
            other => CliError::Io(other.to_string()),
        })?;
        self.emit(&quality, RdfFormat::TriG)?;
        Ok(0)
    }

    fn validate(&self, report: ReportFormat) -> Outcome {
        let data = self.read_inputs()?;
        let tbox = self.analysis_tbox(&data)?;
        let graphs = match self.graph_iri()? {
            Some(g) => vec![g],
            None => {
                let quality: Vec<NamedNode> = data
                    .iter()
                    .filter(|q| {
                        q.predicate == ns::RDF_TYPE
                            && q.object.as_named_node().is_some_and(|o| o == ns::DAQ_QUALITY_GRAPH)
                    })
                    .filter_map(|q| q.subject.as_named_node().cloned())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                if quality.is_empty() {
                    data.graph_names()
                } else {
                    quality
                }
            }
        };
        if graphs.is_empty() {
            eprintln!("no named graph to validate");
            return Ok(1);
        }
        let reports: Vec<_> = graphs.iter().map(|g| validate(&data, g, &tbox)).collect();
        let text = match report {
            ReportFormat::Text => reports
                .iter()
                .map(|r| {
                    let status = if r.passed {
                        "passed".to_owned()
                    } else {
                        format!("{} violation(s)", r.violations.len())
                    };
                    format!("graph <{}>: {status}\n{}", r.graph, r.to_text())
                })
                .collect::<String>(),
            ReportFormat::Json if reports.len() == 1 => format!("{}\n", reports[0].to_json()),
            ReportFormat::Json => {
                let parts: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
                format!("[\n{}\n]\n", parts.join(",\n"))
            }
        };
        write_bytes(self.output(), text.as_bytes())?;
        Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
    }

    fn group(&self, class: &str, group_iri: Option<&str>) -> Outcome {
        let data = self.read_inputs()?;
        let tbox = self.analysis_tbox(&data)?;
        let class = expand_iri(class)?;
        let target = self.graph_iri()?;
        let group_iri = match group_iri {
            Some(s) => expand_iri(s)?,
            None => {
                let Some(base) = target.clone().or_else(|| data.graph_names().into_iter().next()) else {
                    return usage("--group-iri is required when the input has no named graph");
                };
                NamedNode::new_unchecked(format!("{}/group/{}", base.as_str(), class.local_name()))
            }
        };
        let (group, quads) = group_by_class(&data, &class, &tbox, &group_iri, target.as_ref());
        if group.members.is_empty() {
            eprintln!("no observations below instances of {class}");
        } else {
            eprintln!("{} observation(s) in {}", group.members.len(), group.group_iri);
        }
        let mut out = QuadDataset::new();
        for q in quads {
            out.insert(q);
        }
        self.emit(&with_prefixes(out), RdfFormat::TriG)?;
        Ok(0)
    }

    fn ranking_profile(&self) -> Result<RankingProfile, CliError> {
        let owned;
        let cfg: &RankingConfig = match (&self.flags.weights, &self.config.ranking) {
            (Some(path), _) => {
                owned = load_toml::<RankingConfig>(path)?;
                &owned
            }
            (None, Some(r)) => r,
            (None, None) => return usage("no ranking profile (--weights or [ranking] in the configuration)"),
        };
        let weights = cfg
            .weights
            .iter()
            .map(|(k, w)| Ok((expand_iri(k)?, *w)))
            .collect::<Result<_, CliError>>()?;
        let profile = RankingProfile {
            weights,
            normalization: cfg.normalization,
            missing_policy: cfg.missing_policy,
        };
        profile.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(profile)
    }

    fn rank(&self) -> Outcome {
        let data = self.read_inputs()?;
        let tbox = self.analysis_tbox(&data)?;
        let profile = self.ranking_profile()?;
        let mut candidates: BTreeSet<NamedNode> = self.computed_on()?.into_iter().collect();
        if candidates.is_empty() {
            candidates = observations(&data).into_iter().map(|o| o.computed_on).collect();
        }
        let ranked = rank(&candidates, &data, &profile, &tbox).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut text = String::from("rank\tcomputedOn\tscore\n");
        for (i, (c, score)) in ranked.iter().enumerate() {
            text.push_str(&format!("{}\t{}\t{}\n", i + 1, c.as_str(), format_value(*score)));
        }
        write_bytes(self.output(), text.as_bytes())?;
        Ok(0)
    }

    fn trend(&self, class: &str) -> Outcome {
        let data = self.read_inputs()?;
        let tbox = self.analysis_tbox(&data)?;
        let class = expand_iri(class)?;
        let mut versions = self.computed_on()?;
        if versions.is_empty() {
            let records: Vec<ObservationRecord> =
                observations(&data).into_iter().filter(|o| o.is_instance_of(&class, &tbox)).collect();
            versions = versions_in(&records);
        }
        let series = trend(&data, &class, &versions, &tbox).map_err(|e| CliError::Usage(e.to_string()))?;
        for v in &series.skipped {
            eprintln!("no observation of {class} on {v}");
        }
        let mut text = String::from("computedOn\ttimestamp\tvalue\n");
        for p in &series.points {
            text.push_str(&format!(
                "{}\t{}\t{}\n",
                p.computed_on.as_str(),
                qualcube::store::timestamp_lexical(&p.timestamp),
                format_value(p.value)
            ));
        }
        write_bytes(self.output(), text.as_bytes())?;
        Ok(0)
    }

    fn stars(&self, base_stars: Option<u8>) -> Outcome {
        let data = self.read_inputs()?;
        let tbox = self.analysis_tbox(&data)?;
        let computed_on = self.single_computed_on()?;
        let file = self.flags.thresholds.as_deref().map(load_toml::<ThresholdsFile>).transpose()?;
        let raw = file.as_ref().map_or(&self.config.thresholds, |f| &f.thresholds);
        if raw.is_empty() {
            return usage("no thresholds (--thresholds or [thresholds] in the configuration)");
        }
        let thresholds: BTreeMap<NamedNode, f64> =
            raw.iter().map(|(k, v)| Ok((expand_iri(k)?, *v))).collect::<Result<_, CliError>>()?;
        let base = base_stars
            .or(file.as_ref().and_then(|f| f.base_stars))
            .or(self.config.base_stars)
            .unwrap_or(5);
        if base > 5 {
            return usage(format!("base rating {base} is outside 0..=5"));
        }
        let rating = six_star(&computed_on, &data, &thresholds, base, &tbox);
        for r in &rating.reasons {
            eprintln!("{r}");
        }
        write_bytes(self.output(), format!("{}\t{}\n", computed_on.as_str(), rating.stars).as_bytes())?;
        Ok(if rating.reasons.is_empty() { 0 } else { 1 })
    }

    fn chart(&self, csv: Option<&Path>) -> Outcome {
        let Some(kind) = self.flags.kind else {
            return usage("--kind is required (hbar, vbar, radar or lines)");
        };
        let kind = ChartKind::from(kind);
        let data = self.read_inputs()?;
        let (descriptors, _) = self.vocabulary()?;
        let tbox = self.analysis_tbox(&data)?;
        let records = observations(&data);
        let mut rows = self.computed_on()?;
        if rows.is_empty() {
            rows = versions_in(&records);
        }
        let observed: Vec<NamedNode> = descriptors
            .iter()
            .map(|d| &d.metric_class)
            .filter(|c| records.iter().any(|r| r.metric_classes.contains(*c)))
            .cloned()
            .collect();
        let list = self.metric_list();
        let mut columns: Vec<NamedNode> = Vec::new();
        if list.is_empty() {
            columns = observed;
        } else {
            for item in &list {
                let add: Vec<NamedNode> = match item.trim() {
                    "offline" => OFFLINE_METRICS.iter().map(|c| NamedNode::new_unchecked(*c)).collect(),
                    "all" => observed.clone(),
                    other => vec![expand_iri(other)?],
                };
                for c in add {
                    if !columns.contains(&c) {
                        columns.push(c);
                    }
                }
            }
        }
        let mut spec = ChartSpec::from_observations(kind, &data, rows, columns, &tbox);
        if kind == ChartKind::Lines {
            spec.x_label = "version".into();
        }
        let svg = render_svg(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
        if let Some(path) = csv {
            let table = export_csv(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
            write_bytes(Some(path), &table)?;
        }
        write_bytes(self.output(), &svg)?;
        Ok(0)
    }

    fn merge(&self) -> Outcome {
        let inputs = self.inputs()?;
        let runs = inputs.iter().map(|p| read_rdf(p)).collect::<Result<Vec<_>, _>>()?;
        let mut merged = QuadDataset::new();
        for run in &runs {
            let graphs = match self.graph_iri()? {
                Some(g) => vec![g],
                None => run.graph_names(),
            };
            for g in &graphs {
                merge_runs(&merged, run, g).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            merged.extend_from(run);
        }
        self.emit(&with_prefixes(merged), RdfFormat::TriG)?;
        Ok(0)
    }

    fn vocab_dump(&self) -> Outcome {
        let mut data = QuadDataset::new();
        let builtin = builtin_daq_tbox();
        for q in builtin.to_quads(None).into_iter().chain(dsd_definition()) {
            data.insert(q);
        }
        data.extend_from(&shipped_catalog());
        for p in &self.flags.extension {
            data.extend_from(&read_rdf(p)?);
        }
        self.emit(&with_prefixes(data), RdfFormat::Turtle)?;
        Ok(0)
    }

    fn extend_check(&self) -> Outcome {
        let (shipped, base) = shipped_descriptors();
        let mut failed = false;
        let mut text = String::new();
        for path in self.inputs()? {
            let ext = read_rdf(&path)?;
            match load_extension(&ext, &base) {
                Ok((descriptors, _)) => {
                    for d in descriptors.iter().filter(|d| !shipped.contains(d)) {
                        text.push_str(&format!(
                            "{}\t{}\t{}\t{}\n",
                            d.metric_class.as_str(),
                            d.dimension_class.as_str(),
                            d.category_class.as_str(),
                            d.expected_data_type.as_str()
                        ));
                    }
                }
                Err(e) => {
                    failed = true;
                    for d in &e.defects {
                        eprintln!("{}: {d}", path.display());
                    }
                }
            }
        }
        write_bytes(self.output(), text.as_bytes())?;
        Ok(if failed { 1 } else { 0 })
    }
}
