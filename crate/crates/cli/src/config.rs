//! Experiment configs: a JSON document with a shift, a potential, an ordered
//! list of analyses and output settings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use symdyn_core::{Alphabet, Oracle, Potential, Word, WordSet};
use symdyn_models::{
    beta_shift, coded_shift, cocyclic_shift, cycle_sft, full_shift, s_gap_shift, sft_from_forbidden, BetaSpec,
    CocyclicSpec, CodedSpec, GapSet, SGapSpec, SftSpec,
};

/// Enumeration depth accepted without `--depth-guard`.
pub const DEFAULT_DEPTH_GUARD: usize = 30;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub shift: ShiftConfig,
    #[serde(default)]
    pub potential: PotentialConfig,
    pub analyses: Vec<AnalysisConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShiftConfig {
    Sft {
        alphabet: Vec<String>,
        forbidden: Vec<String>,
    },
    FullShift {
        k: usize,
    },
    CycleSft {
        k: usize,
    },
    Beta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        driving: Option<DrivingConfig>,
        cert_depth: usize,
    },
    SGap {
        gaps: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tail: Option<GapTail>,
    },
    Coded {
        alphabet: Vec<String>,
        generators: Vec<String>,
        #[serde(default)]
        truncated: bool,
    },
    Cocyclic {
        alphabet: Vec<String>,
        matrices: Vec<Vec<Vec<i64>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrivingConfig {
    #[serde(default)]
    pub prefix: String,
    pub period: String,
}

/// All `n ≥ start` with `n ≡ start (mod period)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapTail {
    pub start: u32,
    pub period: u32,
}

/// `"zero"` or a window table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PotentialConfig {
    Named(String),
    Table { range: usize, table: BTreeMap<String, f64> },
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig::Named("zero".into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CollectionConfig {
    #[default]
    Language,
    AvoidSymbol {
        symbol: String,
    },
    AvoidWord {
        word: String,
    },
    /// `{word^k : k ≥ 1}`.
    Powers {
        word: String,
    },
    Explicit {
        words: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySource {
    /// `F = c(sL ∩ Lr ∩ G)` from the most recent triple.
    Triple,
    /// `F = I^*` minus ε.
    Generators { generators: Vec<String> },
    /// `F` given directly.
    Collection { collection: CollectionConfig },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeConfig {
    Uniform,
    NonUniform,
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AnalysisConfig {
    PressureEstimate {
        #[serde(default)]
        collection: CollectionConfig,
        n_max: usize,
        /// Margin `δ` against the language; no comparison when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        margin: Option<f64>,
    },
    EntropyExact {},
    Synchronising {
        word: String,
        depth: usize,
    },
    Persistence {
        cminus: CollectionConfig,
        cplus: CollectionConfig,
        depth: usize,
    },
    CompleteList {
        cminus: CollectionConfig,
        cplus: CollectionConfig,
        thresholds: Vec<usize>,
        depth: usize,
        tau_cap: usize,
    },
    SyncTriple {
        #[serde(default)]
        good: CollectionConfig,
        tau: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed_v: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed_w: Option<String>,
        #[serde(default = "one")]
        seed_length: usize,
        cert_depth: usize,
        #[serde(default = "yes")]
        no_long_overlaps: bool,
    },
    FreeFamily {
        source: FamilySource,
        depth: usize,
        check_depth: usize,
    },
    Decipherability {
        depth: usize,
    },
    Tower {
        depth: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<String>,
        n_max: usize,
    },
    Marking {
        windows: Vec<String>,
    },
    EFraction {
        mode: ModeConfig,
        n_lo: usize,
        n_hi: usize,
    },
}

impl AnalysisConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            AnalysisConfig::PressureEstimate { .. } => "pressure_estimate",
            AnalysisConfig::EntropyExact {} => "entropy_exact",
            AnalysisConfig::Synchronising { .. } => "synchronising",
            AnalysisConfig::Persistence { .. } => "persistence",
            AnalysisConfig::CompleteList { .. } => "complete_list",
            AnalysisConfig::SyncTriple { .. } => "sync_triple",
            AnalysisConfig::FreeFamily { .. } => "free_family",
            AnalysisConfig::Decipherability { .. } => "decipherability",
            AnalysisConfig::Tower { .. } => "tower",
            AnalysisConfig::Marking { .. } => "marking",
            AnalysisConfig::EFraction { .. } => "e_fraction",
        }
    }

    /// Word-enumeration depths, checked against the depth guard.
    pub fn enumeration_depths(&self) -> Vec<(&'static str, usize)> {
        match self {
            AnalysisConfig::PressureEstimate { n_max, .. } => vec![("n_max", *n_max)],
            AnalysisConfig::EntropyExact {} => vec![],
            AnalysisConfig::Synchronising { depth, .. } => vec![("depth", *depth)],
            AnalysisConfig::Persistence { depth, .. } => vec![("depth", *depth)],
            AnalysisConfig::CompleteList { depth, .. } => vec![("depth", *depth)],
            AnalysisConfig::SyncTriple { cert_depth, .. } => vec![("cert_depth", *cert_depth)],
            AnalysisConfig::FreeFamily { depth, check_depth, .. } => {
                vec![("depth", *depth), ("check_depth", *check_depth)]
            }
            AnalysisConfig::Decipherability { depth } => vec![("depth", *depth)],
            AnalysisConfig::Tower { depth, .. } => vec![("depth", *depth)],
            AnalysisConfig::Marking { windows } => {
                vec![("windows", windows.iter().map(|w| w.chars().count()).max().unwrap_or(0))]
            }
            AnalysisConfig::EFraction { n_hi, .. } => vec![("n_hi", *n_hi)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Dat,
    Edges,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_directory")]
    pub directory: String,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

fn default_directory() -> String {
    "out".into()
}

fn default_formats() -> Vec<Format> {
    vec![Format::Json, Format::Csv, Format::Dat, Format::Edges]
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { directory: default_directory(), formats: default_formats() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    fn error(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { severity: Severity::Error, field: field.into(), message: message.into() }
    }

    fn warning(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { severity: Severity::Warning, field: field.into(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}: {}", self.field, self.message)
    }
}

/// Parses a config; syntax and schema errors carry line and column.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, Diagnostic> {
    serde_json::from_str(text).map_err(|e| {
        let field = match e.classify() {
            serde_json::error::Category::Syntax | serde_json::error::Category::Eof => "syntax",
            _ => "schema",
        };
        Diagnostic::error(format!("{field} (line {}, column {})", e.line(), e.column()), e.to_string())
    })
}

fn alphabet_from(symbols: &[String], field: &str) -> Result<Alphabet, Diagnostic> {
    Alphabet::new(symbols.iter().cloned()).map_err(|e| Diagnostic::error(field, e.to_string()))
}

fn parse_words(alphabet: &Alphabet, words: &[String], field: &str) -> Result<Vec<Word>, Diagnostic> {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| alphabet.parse(w).map_err(|e| Diagnostic::error(format!("{field}[{i}]"), e.to_string())))
        .collect()
}

/// Builds the language oracle of a shift config. Enumeration is allowed up
/// to `depth_guard`, except for β-shifts, which stay within their certificate.
pub fn build_shift(shift: &ShiftConfig, depth_guard: usize) -> Result<Oracle, Diagnostic> {
    let built: Oracle = match shift {
        ShiftConfig::Sft { alphabet, forbidden } => {
            let a = alphabet_from(alphabet, "shift.alphabet")?;
            let words = parse_words(&a, forbidden, "shift.forbidden")?;
            let sft = sft_from_forbidden(SftSpec::new(a, words)).map_err(|e| Diagnostic::error("shift", e.to_string()))?;
            Arc::new(sft.with_depth_limit(depth_guard))
        }
        ShiftConfig::FullShift { k } => {
            if *k == 0 {
                return Err(Diagnostic::error("shift.k", "alphabet size must be positive"));
            }
            Arc::new(full_shift(*k).with_depth_limit(depth_guard))
        }
        ShiftConfig::CycleSft { k } => {
            Arc::new(cycle_sft(*k).map_err(|e| Diagnostic::error("shift.k", e.to_string()))?.with_depth_limit(depth_guard))
        }
        ShiftConfig::Beta { beta, driving, cert_depth } => {
            let spec = match (beta, driving) {
                (Some(b), None) => BetaSpec::Beta(*b),
                (None, Some(d)) => {
                    let digits = |s: &str, field: &str| {
                        s.chars()
                            .map(|c| c.to_digit(10).map(|x| x as u8))
                            .collect::<Option<Vec<u8>>>()
                            .map(Word::from)
                            .ok_or_else(|| Diagnostic::error(field, format!("{s:?} is not a digit string")))
                    };
                    BetaSpec::Driving {
                        prefix: digits(&d.prefix, "shift.driving.prefix")?,
                        period: digits(&d.period, "shift.driving.period")?,
                    }
                }
                _ => return Err(Diagnostic::error("shift.beta", "give exactly one of beta and driving")),
            };
            Arc::new(beta_shift(spec, *cert_depth).map_err(|e| Diagnostic::error("shift", e.to_string()))?)
        }
        ShiftConfig::SGap { gaps, tail } => {
            let s = match tail {
                None => GapSet::finite(gaps.iter().copied()),
                Some(t) => GapSet::eventually_periodic(gaps.iter().copied(), t.start, t.period)
                    .map_err(|e| Diagnostic::error("shift.tail", e.to_string()))?,
            };
            let shift = s_gap_shift(SGapSpec { s }).map_err(|e| Diagnostic::error("shift.gaps", e.to_string()))?;
            Arc::new(shift.with_depth_limit(depth_guard))
        }
        ShiftConfig::Coded { alphabet, generators, truncated } => {
            let a = alphabet_from(alphabet, "shift.alphabet")?;
            let generators = parse_words(&a, generators, "shift.generators")?;
            let spec = CodedSpec { alphabet: a, generators, truncated: *truncated };
            Arc::new(coded_shift(spec).map_err(|e| Diagnostic::error("shift", e.to_string()))?.with_depth_limit(depth_guard))
        }
        ShiftConfig::Cocyclic { alphabet, matrices } => {
            let a = alphabet_from(alphabet, "shift.alphabet")?;
            let spec = CocyclicSpec::integer(a, matrices.clone());
            let shift = cocyclic_shift(spec).map_err(|e| Diagnostic::error("shift.matrices", e.to_string()))?;
            Arc::new(shift.with_depth_limit(depth_guard))
        }
    };
    Ok(built)
}

pub fn build_potential(pot: &PotentialConfig, alphabet: &Alphabet) -> Result<Potential<f64>, Diagnostic> {
    match pot {
        PotentialConfig::Named(name) if name == "zero" => Ok(Potential::zero(alphabet.size())),
        PotentialConfig::Named(name) => {
            Err(Diagnostic::error("potential", format!("unknown potential {name:?}; expected \"zero\" or a table")))
        }
        PotentialConfig::Table { range, table } => {
            let mut entries = Vec::new();
            for (key, v) in table {
                let w = alphabet.parse(key).map_err(|e| Diagnostic::error(format!("potential.table.{key}"), e.to_string()))?;
                if !v.is_finite() {
                    return Err(Diagnostic::error(format!("potential.table.{key}"), "values must be finite"));
                }
                entries.push((w, *v));
            }
            Potential::from_table(alphabet.size(), *range, entries).map_err(|e| Diagnostic::error("potential", e.to_string()))
        }
    }
}

pub fn build_collection(c: &CollectionConfig, lang: &Oracle, field: &str) -> Result<WordSet, Diagnostic> {
    let a = lang.alphabet();
    let parse = |s: &str, f: &str| a.parse(s).map_err(|e| Diagnostic::error(format!("{field}.{f}"), e.to_string()));
    Ok(match c {
        CollectionConfig::Language => WordSet::language(lang.clone()),
        CollectionConfig::AvoidSymbol { symbol } => {
            let x = a
                .index_of(symbol)
                .ok_or_else(|| Diagnostic::error(format!("{field}.symbol"), format!("unknown symbol {symbol:?}")))?;
            WordSet::prefix_closed(lang.clone(), format!("avoid {symbol}"), move |w| !w.contains(&x))
        }
        CollectionConfig::AvoidWord { word } => {
            let u = parse(word, "word")?;
            if u.is_empty() {
                return Err(Diagnostic::error(format!("{field}.word"), "word must be nonempty"));
            }
            WordSet::prefix_closed(lang.clone(), format!("avoid {word}"), move |w| !symdyn_core::word::is_subword(&u, w))
        }
        CollectionConfig::Powers { word } => {
            let u = parse(word, "word")?;
            if u.is_empty() {
                return Err(Diagnostic::error(format!("{field}.word"), "word must be nonempty"));
            }
            WordSet::filtered(lang.clone(), format!("({word})^+"), move |w| {
                !w.is_empty() && w.len() % u.len() == 0 && w.chunks(u.len()).all(|c| c == u.as_slice())
            })
        }
        CollectionConfig::Explicit { words } => {
            let parsed = parse_words(a, words, &format!("{field}.words"))?;
            WordSet::explicit(lang.clone(), "explicit", parsed)
        }
    })
}

fn check_word(lang: &Oracle, w: &str, field: String, out: &mut Vec<Diagnostic>) {
    if let Err(e) = lang.alphabet().parse(w) {
        out.push(Diagnostic::error(field, e.to_string()));
    }
}

fn check_collection(lang: &Oracle, c: &CollectionConfig, field: String, out: &mut Vec<Diagnostic>) {
    if let Err(d) = build_collection(c, lang, &field) {
        out.push(d);
    }
}

/// Schema, model and guard checks. No analysis is run.
pub fn validate(config: &ExperimentConfig, depth_guard: usize) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let lang = match build_shift(&config.shift, depth_guard) {
        Ok(l) => l,
        Err(d) => return vec![d],
    };
    if let Err(d) = build_potential(&config.potential, lang.alphabet()) {
        out.push(d);
    }
    if config.analyses.is_empty() {
        out.push(Diagnostic::warning("analyses", "no analyses requested"));
    }
    if config.output.formats.is_empty() {
        out.push(Diagnostic::warning("output.formats", "no output formats requested"));
    }
    for (i, a) in config.analyses.iter().enumerate() {
        let at = |f: &str| format!("analyses[{i}].{f}");
        for (name, depth) in a.enumeration_depths() {
            if depth > depth_guard {
                out.push(Diagnostic::warning(at(name), format!("{depth} exceeds the depth guard {depth_guard}")));
            }
        }
        match a {
            AnalysisConfig::PressureEstimate { collection, n_max, margin } => {
                check_collection(&lang, collection, at("collection"), &mut out);
                if *n_max == 0 {
                    out.push(Diagnostic::error(at("n_max"), "must be positive"));
                }
                if margin.is_some_and(|d| !(d >= 0.0 && d.is_finite())) {
                    out.push(Diagnostic::error(at("margin"), "must be a nonnegative number"));
                }
            }
            AnalysisConfig::EntropyExact {} => {
                if !matches!(config.shift, ShiftConfig::Sft { .. } | ShiftConfig::FullShift { .. } | ShiftConfig::CycleSft { .. }) {
                    out.push(Diagnostic::error(at("kind"), "entropy_exact needs a finite-type shift"));
                }
            }
            AnalysisConfig::Synchronising { word, .. } => check_word(&lang, word, at("word"), &mut out),
            AnalysisConfig::Persistence { cminus, cplus, .. } => {
                check_collection(&lang, cminus, at("cminus"), &mut out);
                check_collection(&lang, cplus, at("cplus"), &mut out);
            }
            AnalysisConfig::CompleteList { cminus, cplus, thresholds, .. } => {
                check_collection(&lang, cminus, at("cminus"), &mut out);
                check_collection(&lang, cplus, at("cplus"), &mut out);
                if thresholds.is_empty() {
                    out.push(Diagnostic::error(at("thresholds"), "at least one threshold M is required"));
                }
            }
            AnalysisConfig::SyncTriple { good, seed_v, seed_w, seed_length, .. } => {
                check_collection(&lang, good, at("good"), &mut out);
                for (name, s) in [("seed_v", seed_v), ("seed_w", seed_w)] {
                    if let Some(s) = s {
                        check_word(&lang, s, at(name), &mut out);
                    }
                }
                if *seed_length == 0 {
                    out.push(Diagnostic::error(at("seed_length"), "must be positive"));
                }
            }
            AnalysisConfig::FreeFamily { source, .. } => match source {
                FamilySource::Triple => {
                    if !config.analyses[..i].iter().any(|b| matches!(b, AnalysisConfig::SyncTriple { .. })) {
                        out.push(Diagnostic::error(at("source"), "no earlier sync_triple analysis"));
                    }
                }
                FamilySource::Generators { generators } => {
                    for (j, g) in generators.iter().enumerate() {
                        check_word(&lang, g, at(&format!("source.generators[{j}]")), &mut out);
                    }
                    if generators.is_empty() {
                        out.push(Diagnostic::error(at("source.generators"), "at least one generator is required"));
                    }
                }
                FamilySource::Collection { collection } => {
                    check_collection(&lang, collection, at("source.collection"), &mut out)
                }
            },
            AnalysisConfig::Decipherability { .. } | AnalysisConfig::Tower { .. } | AnalysisConfig::Marking { .. } => {
                if !config.analyses[..i].iter().any(|b| matches!(b, AnalysisConfig::FreeFamily { .. })) {
                    out.push(Diagnostic::error(at("kind"), "no earlier free_family analysis"));
                }
                if let AnalysisConfig::Tower { base: Some(b), .. } = a {
                    check_word(&lang, b, at("base"), &mut out);
                }
                if let AnalysisConfig::Marking { windows } = a {
                    for (j, w) in windows.iter().enumerate() {
                        check_word(&lang, w, at(&format!("windows[{j}]")), &mut out);
                    }
                }
            }
            AnalysisConfig::EFraction { n_lo, n_hi, .. } => {
                if !config.analyses[..i].iter().any(|b| matches!(b, AnalysisConfig::SyncTriple { .. })) {
                    out.push(Diagnostic::error(at("kind"), "no earlier sync_triple analysis"));
                }
                if n_lo > n_hi {
                    out.push(Diagnostic::error(at("n_lo"), "n_lo exceeds n_hi"));
                }
            }
        }
    }
    out
}
