//! Executes the analyses of a config in order and assembles the report.

use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use symdyn_core::fmt::sig17;
use symdyn_core::{Alphabet, Oracle, Potential, WordSet};
use symdyn_decomp::{
    check_complete_list_Istar, check_persistence, check_spec_I, check_stay_good_III, check_synchronising,
    sync_decomposition, ObstructionPair, StayGood, Verdict,
};
use symdyn_models::{cycle_sft, full_shift, sft_from_forbidden, SftSpec};
use symdyn_thermo::{margin_rule, pressure_estimate};
use symdyn_tower::{
    build_free_family, build_tower, check_free_concatenation, check_gibbs_hook, check_irreducible_code,
    count_factorisations, default_seeds, e_fraction, ensure_no_long_overlaps, find_sync_triple,
    is_uniquely_decipherable, long_overlap, loop_sums, marking_analysis, sardinas_patterson, spr_diagnostic,
    FreeFamily, SyncMode, SyncTriple,
};

use crate::config::{
    build_collection, build_potential, build_shift, validate, AnalysisConfig, Diagnostic, ExperimentConfig,
    FamilySource, Format, ModeConfig, Severity, ShiftConfig,
};

/// One output file, named relative to the output directory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub format: Format,
    pub contents: String,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: Value,
    /// `report.json` followed by the per-analysis files, in analysis order.
    pub artifacts: Vec<Artifact>,
    pub wall_time: f64,
}

impl RunOutput {
    pub fn report_text(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.report).expect("serialisable report");
        text.push('\n');
        text
    }
}

#[derive(Debug)]
pub enum RunError {
    Invalid(Vec<Diagnostic>),
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub depth_guard: usize,
    pub threads: Option<usize>,
}

#[derive(Default)]
struct Outcome {
    result: Value,
    csv: Option<String>,
    dat: Option<String>,
    edges: Option<String>,
}

struct Context {
    lang: Oracle,
    pot: Potential<f64>,
    good: Option<WordSet>,
    tau: usize,
    triple: Option<SyncTriple>,
    family: Option<FreeFamily>,
}

type Step = Result<Outcome, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn verdict_rows(alphabet: &Alphabet, verdicts: &[&Verdict]) -> (Value, String) {
    let mut csv = String::from("condition,depth,pass,failures\n");
    for v in verdicts {
        csv.push_str(&format!("{},{},{},{}\n", v.condition, v.depth, v.pass, v.failures));
    }
    (Value::Array(verdicts.iter().map(|v| v.to_json(alphabet)).collect()), csv)
}

fn triple_csv(alphabet: &Alphabet, t: &SyncTriple) -> String {
    format!(
        "field,value\nr,{}\nc,{}\ns,{}\ncert_depth,{}\nno_long_overlaps,{}\n",
        alphabet.render(&t.r),
        alphabet.render(&t.c),
        alphabet.render(&t.s),
        t.cert_depth,
        t.no_long_overlaps
    )
}

fn entropy_exact(shift: &ShiftConfig, lang: &Oracle) -> Step {
    let h = match shift {
        ShiftConfig::Sft { forbidden, .. } => {
            let words = forbidden.iter().map(|w| lang.alphabet().parse(w)).collect::<Result<Vec<_>, _>>().map_err(err)?;
            sft_from_forbidden(SftSpec::new(lang.alphabet().clone(), words)).map_err(err)?.entropy_exact()
        }
        ShiftConfig::FullShift { k } => full_shift(*k).entropy_exact(),
        ShiftConfig::CycleSft { k } => cycle_sft(*k).map_err(err)?.entropy_exact(),
        _ => return Err("entropy_exact needs a finite-type shift".into()),
    };
    Ok(Outcome {
        result: json!({ "entropy": sig17(h) }),
        csv: Some(format!("quantity,value\nentropy,{}\n", sig17(h))),
        ..Outcome::default()
    })
}

fn need_family(ctx: &Context) -> Result<&FreeFamily, String> {
    ctx.family.as_ref().ok_or_else(|| "no free family has been built".to_string())
}

fn need_triple(ctx: &Context) -> Result<(&SyncTriple, &WordSet), String> {
    match (&ctx.triple, &ctx.good) {
        (Some(t), Some(g)) => Ok((t, g)),
        _ => Err("no synchronising triple has been found".to_string()),
    }
}

fn execute(a: &AnalysisConfig, shift: &ShiftConfig, ctx: &mut Context) -> Step {
    let lang = ctx.lang.clone();
    let alphabet = lang.alphabet().clone();
    let parse = |w: &str| alphabet.parse(w).map_err(err);
    match a {
        AnalysisConfig::PressureEstimate { collection, n_max, margin } => {
            let set = build_collection(collection, &lang, "collection").map_err(err)?;
            let report = pressure_estimate(&set, &ctx.pot, *n_max).map_err(err)?;
            let mut result = report.to_json();
            if let Some(delta) = margin {
                let l = pressure_estimate(&WordSet::language(lang.clone()), &ctx.pot, *n_max).map_err(err)?;
                let m = margin_rule(&report, &l, *delta);
                let gaps: Vec<Value> = m.gaps.iter().map(|(n, g)| json!({"n": n, "gap": sig17(*g)})).collect();
                result["margin"] = json!({
                    "delta": sig17(m.delta),
                    "pass": m.pass,
                    "failing": m.failing,
                    "gaps": gaps,
                    "language_rate": sig17(l.final_rate()),
                });
            }
            Ok(Outcome { result, csv: Some(report.to_csv()), dat: Some(report.to_dat()), edges: None })
        }
        AnalysisConfig::EntropyExact {} => entropy_exact(shift, &lang),
        AnalysisConfig::Synchronising { word, depth } => {
            let s = parse(word)?;
            let sync = check_synchronising(&lang, &s, *depth).map_err(err)?;
            let mut verdicts = vec![sync.clone()];
            if sync.pass {
                let coll = sync_decomposition(&lang, &s, *depth).map_err(err)?;
                verdicts.push(check_spec_I(&coll, *depth).map_err(err)?);
                verdicts.push(check_stay_good_III(&coll, *depth, StayGood::Both).map_err(err)?);
            }
            let (result, csv) = verdict_rows(&alphabet, &verdicts.iter().collect::<Vec<_>>());
            Ok(Outcome { result: json!({ "verdicts": result }), csv: Some(csv), ..Outcome::default() })
        }
        AnalysisConfig::Persistence { cminus, cplus, depth } => {
            let pair = ObstructionPair::new(
                build_collection(cminus, &lang, "cminus").map_err(err)?,
                build_collection(cplus, &lang, "cplus").map_err(err)?,
                1,
            );
            let v = check_persistence(&pair, *depth).map_err(err)?;
            let (result, csv) = verdict_rows(&alphabet, &[&v]);
            Ok(Outcome { result: json!({ "verdicts": result }), csv: Some(csv), ..Outcome::default() })
        }
        AnalysisConfig::CompleteList { cminus, cplus, thresholds, depth, tau_cap } => {
            let pair = ObstructionPair::new(
                build_collection(cminus, &lang, "cminus").map_err(err)?,
                build_collection(cplus, &lang, "cplus").map_err(err)?,
                thresholds[0],
            );
            let list = check_complete_list_Istar(&pair, thresholds, *depth, *tau_cap).map_err(err)?;
            let mut csv = String::from("M,tau\n");
            for (m, t) in &list.tau {
                csv.push_str(&format!("{m},{}\n", t.map(|x| x.to_string()).unwrap_or_default()));
            }
            Ok(Outcome { result: json!({ "verdict": list.verdict.to_json(&alphabet) }), csv: Some(csv), ..Outcome::default() })
        }
        AnalysisConfig::SyncTriple { good, tau, seed_v, seed_w, seed_length, cert_depth, no_long_overlaps } => {
            let g = build_collection(good, &lang, "good").map_err(err)?;
            let (dv, dw) = default_seeds(&g, *seed_length).map_err(err)?;
            let v = seed_v.as_deref().map(parse).transpose()?.unwrap_or(dv);
            let w = seed_w.as_deref().map(parse).transpose()?.unwrap_or(dw);
            let found = find_sync_triple(&g, *tau, &v, &w, *cert_depth).map_err(err)?;
            let overlap = long_overlap(lang.as_ref(), &found).map_err(err)?;
            let triple = if *no_long_overlaps {
                ensure_no_long_overlaps(&found, &g, *tau, *cert_depth).map_err(err)?
            } else {
                found.clone()
            };
            let result = json!({
                "seeds": [alphabet.render(&v), alphabet.render(&w)],
                "found": found.to_json(&alphabet),
                "overlap": overlap.as_ref().map(|(k, x)| json!({"k": k, "word": alphabet.render(x)})),
                "triple": triple.to_json(&alphabet),
            });
            let csv = triple_csv(&alphabet, &triple);
            ctx.good = Some(g);
            ctx.tau = *tau;
            ctx.triple = Some(triple);
            Ok(Outcome { result, csv: Some(csv), ..Outcome::default() })
        }
        AnalysisConfig::FreeFamily { source, depth, check_depth } => {
            let family = match source {
                FamilySource::Triple => {
                    let (t, g) = need_triple(ctx)?;
                    build_free_family(t, g, *depth).map_err(err)?
                }
                FamilySource::Generators { generators } => {
                    let gens = generators.iter().map(|w| parse(w)).collect::<Result<Vec<_>, _>>()?;
                    FreeFamily::generated_by(&WordSet::explicit(lang.clone(), "I", gens), *depth).map_err(err)?
                }
                FamilySource::Collection { collection } => {
                    let f = build_collection(collection, &lang, "source.collection").map_err(err)?;
                    FreeFamily::from_set(&f, *depth).map_err(err)?
                }
            };
            let mut verdicts = vec![
                check_free_concatenation(&family, *check_depth).map_err(err)?,
                check_irreducible_code(&family, *check_depth).map_err(err)?,
            ];
            if let (FamilySource::Triple, Ok((t, g))) = (source, need_triple(ctx)) {
                verdicts.push(check_gibbs_hook(&family, t, g, ctx.tau, *check_depth).map_err(err)?);
            }
            let f_counts: Vec<usize> = family.f.words_up_to(*depth).map_err(err)?.iter().map(|l| l.len()).collect();
            let mut i_counts = vec![0usize; depth + 1];
            for w in family.irreducibles().map_err(err)? {
                i_counts[w.len()] += 1;
            }
            let mut csv = String::from("n,family_words,irreducibles\n");
            for n in 1..=*depth {
                csv.push_str(&format!("{n},{},{}\n", f_counts[n], i_counts[n]));
            }
            let (vjson, _) = verdict_rows(&alphabet, &verdicts.iter().collect::<Vec<_>>());
            let result = json!({ "family": family.to_json().map_err(err)?, "verdicts": vjson });
            ctx.family = Some(family);
            Ok(Outcome { result, csv: Some(csv), ..Outcome::default() })
        }
        AnalysisConfig::Decipherability { depth } => {
            let family = need_family(ctx)?;
            let d = is_uniquely_decipherable(&family.i, *depth).map_err(err)?;
            let mut result = d.to_json(&alphabet);
            let witness = d.witness.as_ref().map(|a| alphabet.render(&a.word)).unwrap_or_default();
            if let Some(a) = &d.witness {
                let code = d.code.iter().cloned().collect();
                result["witness_factorisations"] = json!(count_factorisations(&a.word, &code));
            }
            let csv = format!("pass,depth,code_size,witness\n{},{},{},{}\n", d.pass, d.depth, d.code.len(), witness);
            Ok(Outcome { result, csv: Some(csv), ..Outcome::default() })
        }
        AnalysisConfig::Tower { depth, base, n_max } => {
            let family = need_family(ctx)?;
            let generators = family.i.nonempty_up_to(*depth).map_err(err)?;
            let base = match base {
                Some(b) => parse(b)?,
                None => generators.first().cloned().ok_or("no generators up to the tower depth")?,
            };
            let tower = build_tower(&family.i, *depth, &base).map_err(err)?;
            let spr = spr_diagnostic(&tower, &ctx.pot, *n_max);
            let (cross_check, table) = if sardinas_patterson(&tower.generators).is_none() {
                match loop_sums(&tower, &ctx.pot, *n_max) {
                    Ok(t) => (json!({"status": "agree", "max_log_discrepancy": sig17(t.max_log_discrepancy)}), t),
                    Err(e) => (json!({"status": "disagree", "error": e.to_string()}), spr.table.clone()),
                }
            } else {
                (json!({"status": "skipped", "reason": "generators are not uniquely decipherable"}), spr.table.clone())
            };
            let gcd = tower.generators.iter().fold(0, |d, w| num_integer::gcd(d, w.len()));
            let result = json!({
                "base": alphabet.render(&base),
                "generators": tower.generators.len(),
                "vertices": tower.vertices.len(),
                "edges": tower.edges.len(),
                "gcd_lengths": gcd,
                "spr": spr.to_json(),
                "cross_check": cross_check,
            });
            Ok(Outcome { result, csv: Some(table.to_csv()), dat: Some(table.to_dat()), edges: Some(tower.to_edge_list()) })
        }
        AnalysisConfig::Marking { windows } => {
            let family = need_family(ctx)?;
            let mut csv = String::from("window,maximal_sets,marking_sets,injective,union_closed\n");
            let mut rows = Vec::new();
            for w in windows {
                let r = marking_analysis(&parse(w)?, family);
                csv.push_str(&format!("{w},{},{},{},{}\n", r.maximal.len(), r.marking_sets, r.injective, r.union_closed));
                let mut j = r.to_json();
                j["window"] = json!(w);
                rows.push((r.injective, j));
            }
            let result = json!({
                "injective_at_all_windows": rows.iter().all(|(i, _)| *i),
                "windows": rows.into_iter().map(|(_, j)| j).collect::<Vec<_>>(),
            });
            Ok(Outcome { result, csv: Some(csv), ..Outcome::default() })
        }
        AnalysisConfig::EFraction { mode, n_lo, n_hi } => {
            let (t, g) = need_triple(ctx)?;
            let mode = match mode {
                ModeConfig::Uniform => SyncMode::Uniform,
                ModeConfig::NonUniform => SyncMode::NonUniform,
            };
            let rows = e_fraction(t, g, &ctx.pot, mode, *n_lo, *n_hi).map_err(err)?;
            let decreasing = rows.windows(2).all(|p| p[1].1 < p[0].1);
            let mut csv = String::from("n,fraction\n");
            let mut dat = String::new();
            for (n, f) in &rows {
                csv.push_str(&format!("{n},{}\n", sig17(*f)));
                dat.push_str(&format!("{n} {}\n", sig17(*f)));
            }
            let result = json!({
                "pattern": alphabet.render(&t.rcs()),
                "rows": rows.iter().map(|(n, f)| json!({"n": n, "fraction": sig17(*f)})).collect::<Vec<_>>(),
                "decreasing": decreasing,
            });
            Ok(Outcome { result, csv: Some(csv), dat: Some(dat), edges: None })
        }
    }
}

pub fn config_hash(config: &ExperimentConfig) -> String {
    let canonical = serde_json::to_string(config).expect("serialisable config");
    Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Validates and runs `config`. Analysis failures become error blocks;
/// only an invalid config or a broken thread pool is an error.
pub fn run(config: &ExperimentConfig, options: &RunOptions) -> Result<RunOutput, RunError> {
    let diagnostics = validate(config, options.depth_guard);
    let errors: Vec<Diagnostic> = diagnostics.into_iter().filter(|d| d.severity == Severity::Error).collect();
    if !errors.is_empty() {
        return Err(RunError::Invalid(errors));
    }
    match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::Internal(e.to_string()))?
            .install(|| run_inner(config, options.depth_guard)),
        None => run_inner(config, options.depth_guard),
    }
}

fn run_inner(config: &ExperimentConfig, depth_guard: usize) -> Result<RunOutput, RunError> {
    let start = Instant::now();
    let lang = build_shift(&config.shift, depth_guard).map_err(|d| RunError::Invalid(vec![d]))?;
    let pot = build_potential(&config.potential, lang.alphabet()).map_err(|d| RunError::Invalid(vec![d]))?;
    let mut ctx = Context { lang: lang.clone(), pot, good: None, tau: 0, triple: None, family: None };
    let formats = &config.output.formats;
    let mut artifacts = Vec::new();
    let mut blocks = Vec::new();
    for (i, a) in config.analyses.iter().enumerate() {
        let id = format!("{:02}_{}", i + 1, a.kind());
        let over: Vec<String> = a
            .enumeration_depths()
            .into_iter()
            .filter(|(_, d)| *d > depth_guard)
            .map(|(name, d)| format!("{name} = {d} exceeds the depth guard {depth_guard}"))
            .collect();
        let step = if over.is_empty() { execute(a, &config.shift, &mut ctx) } else { Err(over.join("; ")) };
        match step {
            Ok(out) => {
                let mut files = Vec::new();
                for (format, ext, contents) in
                    [(Format::Csv, "csv", out.csv), (Format::Dat, "dat", out.dat), (Format::Edges, "edges", out.edges)]
                {
                    if let (true, Some(contents)) = (formats.contains(&format), contents) {
                        let name = format!("{id}.{ext}");
                        files.push(name.clone());
                        artifacts.push(Artifact { name, format, contents });
                    }
                }
                blocks.push(json!({"id": id, "kind": a.kind(), "status": "ok", "result": out.result, "files": files}));
            }
            Err(e) => blocks.push(json!({"id": id, "kind": a.kind(), "status": "error", "error": e})),
        }
    }
    let report = json!({
        "tool": {"name": "symdyn", "version": env!("CARGO_PKG_VERSION")},
        "config_hash": config_hash(config),
        "config": serde_json::to_value(config).map_err(|e| RunError::Internal(e.to_string()))?,
        "shift": {"name": lang.name(), "alphabet": lang.alphabet().symbols()},
        "depth_guard": depth_guard,
        "analyses": blocks,
    });
    let mut out = RunOutput { report, artifacts: Vec::new(), wall_time: 0.0 };
    if formats.contains(&Format::Json) {
        out.artifacts.push(Artifact { name: "report.json".into(), format: Format::Json, contents: out.report_text() });
    }
    out.artifacts.extend(artifacts);
    out.wall_time = start.elapsed().as_secs_f64();
    Ok(out)
}

/// Writes the artifacts and `timing.json` into `dir`.
pub fn write_outputs(out: &RunOutput, dir: &std::path::Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for a in &out.artifacts {
        std::fs::write(dir.join(&a.name), &a.contents)?;
    }
    let timing = json!({ "wall_time_seconds": sig17(out.wall_time) });
    std::fs::write(dir.join("timing.json"), format!("{}\n", serde_json::to_string_pretty(&timing).expect("json")))
}
