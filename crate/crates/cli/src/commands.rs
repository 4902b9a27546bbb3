//! Command implementations behind the CLI surface. Exit codes: 0 success,
//! 1 domain failure (not in class, bound violated, failing records), 2
//! usage or IO error.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use chromabound_core::colorers::{self, BoundTarget, Certificate};
use chromabound_core::decomposition::{self, PropertyLevel};
use chromabound_core::generators::{self, GenSpec, GenTarget};
use chromabound_core::goodgraph::{self, GoodPartition};
use chromabound_core::graph::{Graph, VertexSet};
use chromabound_core::oracle::{self, OracleBudget};
use chromabound_core::patterns::{self, ClassId, HoleKind};

use crate::formats;
use crate::report::{self, Config, RunRecord, RunReport, Timing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassSel {
    Fixed(ClassId),
    Auto,
}

pub fn parse_class(name: &str) -> Result<ClassSel, String> {
    match name {
        "p12p2" => Ok(ClassSel::Fixed(ClassId::P12P2K4e)),
        "2p1p3" => Ok(ClassSel::Fixed(ClassId::TwoP1P3K4e)),
        "3p1p2" => Ok(ClassSel::Fixed(ClassId::ThreeP1P2K4e)),
        "auto" => Ok(ClassSel::Auto),
        other => Err(format!("unknown class {other:?} (p12p2|2p1p3|3p1p2|auto)")),
    }
}

fn budget_of(config: &Config) -> OracleBudget {
    OracleBudget {
        node_limit: config.oracle_node_budget,
        time_hint_ms: config.time_hint_ms,
    }
}

fn read_graphs_or_exit(path: &Path) -> Result<Vec<Graph>, i32> {
    formats::read_graphs(path).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

// -------------------------------------------------------------------
// color
// -------------------------------------------------------------------

pub struct ColorArgs {
    pub class: ClassSel,
    pub input: PathBuf,
    pub certificate: Option<PathBuf>,
    pub json: bool,
    pub good_partition: Option<PathBuf>,
    pub config: Config,
}

fn parse_partition_file(path: &Path) -> Result<GoodPartition, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut lists: Vec<VertexSet> = Vec::new();
    for line in text.lines().take(3) {
        let mut set = VertexSet::new();
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| format!("bad index {tok:?}"))?;
            set.insert(v);
        }
        lists.push(set);
    }
    while lists.len() < 3 {
        lists.push(VertexSet::new());
    }
    Ok(GoodPartition::new(lists[0].clone(), lists[1].clone(), lists[2].clone()))
}

fn certificate_path_for(base: &Path, idx: usize, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("certificate");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("json");
    base.with_file_name(format!("{stem}_{idx}.{ext}"))
}

pub fn cmd_color(args: &ColorArgs) -> i32 {
    let graphs = match read_graphs_or_exit(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    if graphs.is_empty() {
        eprintln!("error: {} holds no graphs", args.input.display());
        return EXIT_USAGE;
    }
    let budget = budget_of(&args.config);

    // good-graph mode: a supplied partition, exactly-omega coloring
    if let Some(partition_path) = &args.good_partition {
        let partition = match parse_partition_file(partition_path) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        let g = &graphs[0];
        return match goodgraph::color_good(g, &partition, &budget) {
            Ok(coloring) => {
                if args.json {
                    println!(
                        "{}",
                        serde_json::json!({
                            "chi": coloring.palette_size(),
                            "colors": coloring.colors(),
                        })
                    );
                } else {
                    println!("good chi={} colors={:?}", coloring.palette_size(), coloring.colors());
                }
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_DOMAIN
            }
        };
    }

    let many = graphs.len() > 1;
    let mut worst = EXIT_OK;
    for (idx, g) in graphs.iter().enumerate() {
        let outcome = match args.class {
            ClassSel::Auto => colorers::color_auto(g, &budget),
            ClassSel::Fixed(class) => {
                colorers::color_in_class(g, class, &budget).map(|(col, cert)| (class, col, cert))
            }
        };
        match outcome {
            Ok((class, coloring, cert)) => {
                let omega = match oracle::max_clique(g, &budget) {
                    Ok(c) => c.len(),
                    Err(e) => {
                        eprintln!("error: {e}");
                        worst = worst.max(EXIT_DOMAIN);
                        continue;
                    }
                };
                let target = BoundTarget::new(class, omega).target;
                let pass = coloring.palette_size() <= target;
                if args.json {
                    println!(
                        "{}",
                        serde_json::json!({
                            "id": idx,
                            "class": class.cli_name(),
                            "chi": coloring.palette_size(),
                            "omega": omega,
                            "bound": target,
                            "pass": pass,
                            "colors": coloring.colors(),
                        })
                    );
                } else {
                    println!(
                        "class={} chi={} omega={} bound={} {}",
                        class.cli_name(),
                        coloring.palette_size(),
                        omega,
                        target,
                        if pass { "PASS" } else { "FAIL" }
                    );
                }
                if let Some(base) = &args.certificate {
                    let path = certificate_path_for(base, idx, many);
                    if let Err(e) = fs::write(&path, report::certificate_json(&cert)) {
                        eprintln!("error: {}: {e}", path.display());
                        worst = worst.max(EXIT_USAGE);
                    }
                }
                if !pass {
                    worst = worst.max(EXIT_DOMAIN);
                }
            }
            Err(e) => {
                eprintln!("error: graph {idx}: {e}");
                worst = worst.max(EXIT_DOMAIN);
            }
        }
    }
    worst
}

// -------------------------------------------------------------------
// check
// -------------------------------------------------------------------

pub struct CheckArgs {
    pub class: ClassSel,
    pub input: PathBuf,
    pub json: bool,
}

pub fn cmd_check(args: &CheckArgs) -> i32 {
    let graphs = match read_graphs_or_exit(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut worst = EXIT_OK;
    for (idx, g) in graphs.iter().enumerate() {
        match args.class {
            ClassSel::Fixed(class) => match patterns::find_forbidden(g, &class.forbidden()) {
                None => {
                    if args.json {
                        println!(
                            "{}",
                            serde_json::json!({"id": idx, "class": class.cli_name(), "member": true})
                        );
                    } else {
                        println!("graph {idx}: member of {}", class.cli_name());
                    }
                }
                Some(w) => {
                    if args.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "id": idx,
                                "class": class.cli_name(),
                                "member": false,
                                "pattern": w.pattern.to_string(),
                                "embedding": w.embedding.map,
                            })
                        );
                    } else {
                        println!(
                            "graph {idx}: NOT a member of {}: induced {} at {:?}",
                            class.cli_name(),
                            w.pattern,
                            w.embedding.map
                        );
                    }
                    worst = worst.max(EXIT_DOMAIN);
                }
            },
            ClassSel::Auto => {
                let classes = patterns::class_membership(g);
                let names: Vec<&str> = classes.iter().map(|c| c.cli_name()).collect();
                if args.json {
                    println!("{}", serde_json::json!({"id": idx, "classes": names}));
                } else {
                    println!("graph {idx}: classes {names:?}");
                }
                if classes.is_empty() {
                    worst = worst.max(EXIT_DOMAIN);
                }
            }
        }
    }
    worst
}

// -------------------------------------------------------------------
// oracle
// -------------------------------------------------------------------

pub struct OracleArgs {
    pub what: String,
    pub input: PathBuf,
    pub json: bool,
    pub config: Config,
}

pub fn cmd_oracle(args: &OracleArgs) -> i32 {
    let graphs = match read_graphs_or_exit(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let budget = budget_of(&args.config);
    let mut worst = EXIT_OK;
    for (idx, g) in graphs.iter().enumerate() {
        let result: Result<(String, serde_json::Value), String> = match args.what.as_str() {
            "chi" => oracle::chromatic_number(g, &budget)
                .map(|(chi, coloring)| {
                    (
                        format!("{chi} colors={:?}", coloring.colors()),
                        serde_json::json!({"chi": chi, "colors": coloring.colors()}),
                    )
                })
                .map_err(|e| e.to_string()),
            "omega" => oracle::max_clique(g, &budget)
                .map(|c| {
                    (
                        format!("{} clique={:?}", c.len(), c.to_vec()),
                        serde_json::json!({"omega": c.len(), "clique": c.to_vec()}),
                    )
                })
                .map_err(|e| e.to_string()),
            "alpha" => oracle::max_stable_set(g, &budget)
                .map(|s| {
                    (
                        format!("{} stable_set={:?}", s.len(), s.to_vec()),
                        serde_json::json!({"alpha": s.len(), "stable_set": s.to_vec()}),
                    )
                })
                .map_err(|e| e.to_string()),
            "perfect" => oracle::is_perfect(g, args.config.perfect_tier)
                .map(|perfect| {
                    let witness = if perfect {
                        None
                    } else {
                        patterns::find_odd_hole_or_antihole(g)
                    };
                    let text = match &witness {
                        None => format!("{perfect}"),
                        Some((e, HoleKind::Hole)) => format!("false hole={:?}", e.map),
                        Some((e, HoleKind::Antihole)) => format!("false antihole={:?}", e.map),
                    };
                    let json = serde_json::json!({
                        "perfect": perfect,
                        "witness": witness.as_ref().map(|(e, k)| serde_json::json!({
                            "kind": match k { HoleKind::Hole => "hole", HoleKind::Antihole => "antihole" },
                            "cycle": e.map,
                        })),
                    });
                    (text, json)
                })
                .map_err(|e| e.to_string()),
            other => {
                eprintln!("error: unknown oracle query {other:?} (chi|omega|alpha|perfect)");
                return EXIT_USAGE;
            }
        };
        match result {
            Ok((text, json)) => {
                if args.json {
                    println!("{json}");
                } else {
                    println!("{text}");
                }
            }
            Err(e) => {
                eprintln!("error: graph {idx}: {e}");
                worst = worst.max(EXIT_DOMAIN);
            }
        }
    }
    worst
}

// -------------------------------------------------------------------
// gen
// -------------------------------------------------------------------

pub struct GenArgs {
    pub class: String,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub count: usize,
    pub out_dir: PathBuf,
}

pub fn cmd_gen(args: &GenArgs) -> i32 {
    let target = match args.class.as_str() {
        "good" => GenTarget::Good,
        name => match parse_class(name) {
            Ok(ClassSel::Fixed(c)) => GenTarget::InClass(c),
            _ => {
                eprintln!("error: gen needs a concrete class or 'good'");
                return EXIT_USAGE;
            }
        },
    };
    if let Err(e) = fs::create_dir_all(&args.out_dir) {
        eprintln!("error: {}: {e}", args.out_dir.display());
        return EXIT_USAGE;
    }
    let mut lines = Vec::with_capacity(args.count);
    for k in 0..args.count as u64 {
        let seed = args.seed.wrapping_add(k);
        let g = match target {
            GenTarget::InClass(class) => {
                let spec = GenSpec::in_class(args.n, args.p, class, seed);
                match generators::random_in_class(&spec) {
                    Ok(g) => g,
                    Err(e) => {
                        eprintln!("error: seed {seed}: {e}");
                        return EXIT_DOMAIN;
                    }
                }
            }
            GenTarget::Good => {
                let third = args.n / 3;
                let sizes = [args.n - 2 * third, third, third];
                generators::random_good_graph(sizes, [args.p; 3], seed).0
            }
        };
        match formats::graph6_encode(&g) {
            Ok(line) => lines.push(line),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_DOMAIN;
            }
        }
    }
    let file = args.out_dir.join(format!(
        "{}_n{}_p{}_s{}.g6",
        args.class, args.n, args.p, args.seed
    ));
    if let Err(e) = fs::write(&file, lines.join("\n") + "\n") {
        eprintln!("error: {}: {e}", file.display());
        return EXIT_USAGE;
    }
    println!("{}", file.display());
    EXIT_OK
}

// -------------------------------------------------------------------
// decompose
// -------------------------------------------------------------------

pub struct DecomposeArgs {
    pub input: PathBuf,
}

fn print_set(label: &str, set: &VertexSet) {
    println!("{label} = {:?}", set.to_vec());
}

pub fn cmd_decompose(args: &DecomposeArgs) -> i32 {
    let graphs = match read_graphs_or_exit(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut worst = EXIT_OK;
    for (idx, g) in graphs.iter().enumerate() {
        println!("graph {idx} (n={})", g.n());
        let Some(c5) = patterns::find_c5(g) else {
            println!("  no induced C5");
            worst = worst.max(EXIT_DOMAIN);
            continue;
        };
        let cycle: [usize; 5] = core::array::from_fn(|i| c5.map[i]);
        let dec = match decomposition::decompose_c5(g, cycle) {
            Ok(d) => d,
            Err(e) => {
                println!("  decomposition failed: {e}");
                worst = worst.max(EXIT_DOMAIN);
                continue;
            }
        };
        println!("  C = {:?}", dec.cycle);
        for i in 0..5 {
            print_set(&format!("  A{}", i + 1), &dec.a[i]);
            print_set(&format!("  B{}", i + 1), &dec.b[i]);
            print_set(&format!("  D{}", i + 1), &dec.d[i]);
            print_set(&format!("  Z{}", i + 1), &dec.z[i]);
            print_set(&format!("  X{}", i + 1), &dec.x(i));
        }
        print_set("  T", &dec.t);
        println!("  flags = {}", decomposition::structural_flags(&dec));
        println!("  # note: set membership is decided by the neighborhood trace alone;");
        println!("  # an F1 apex adjacent to v1 has trace {{v1,v3,v4}} and lies in Z1,");
        println!("  # consistent with X3 = B3 u Z1.");

        let membership = patterns::class_membership(g);
        let mut levels = vec![PropertyLevel::O];
        if membership.contains(&ClassId::TwoP1P3K4e) {
            levels.push(PropertyLevel::M);
        }
        if membership.contains(&ClassId::ThreeP1P2K4e) {
            levels.push(PropertyLevel::L);
        }
        for level in levels {
            let report = decomposition::check_properties(g, &dec, level);
            for check in &report.checks {
                let verdict = if check.holds { "PASS" } else { "FAIL" };
                match &check.witness {
                    None => println!("  {}[i={}] {}", check.id, check.index + 1, verdict),
                    Some(w) => {
                        println!("  {}[i={}] {} witness={:?}", check.id, check.index + 1, verdict, w)
                    }
                }
            }
            if !report.all_hold() {
                worst = worst.max(EXIT_DOMAIN);
            }
        }
    }
    worst
}

// -------------------------------------------------------------------
// verify
// -------------------------------------------------------------------

pub struct VerifyArgs {
    pub class: ClassSel,
    pub dir: Option<PathBuf>,
    pub gen_count: usize,
    pub gen_n: usize,
    pub gen_p: f64,
    pub json: bool,
    pub out: Option<PathBuf>,
    pub cert_dir: Option<PathBuf>,
    pub config: Config,
}

/// Collects the corpus: every graph in the directory (files sorted by
/// name), or seeded generation when no directory is given.
fn collect_corpus(args: &VerifyArgs) -> Result<Vec<(String, Graph)>, String> {
    if let Some(dir) = &args.dir {
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| format!("{}: {e}", dir.display()))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| {
                matches!(
                    p.extension().and_then(|e| e.to_str()),
                    Some("g6") | Some("el") | Some("col")
                )
            })
            .collect();
        files.sort();
        let mut corpus = Vec::new();
        for file in files {
            let graphs = formats::read_graphs(&file)?;
            let name = file
                .file_name()
                .and_then(|s| s.to_str())
                .unwrap_or("graph")
                .to_string();
            for (k, g) in graphs.into_iter().enumerate() {
                corpus.push((format!("{name}#{k}"), g));
            }
        }
        Ok(corpus)
    } else {
        let ClassSel::Fixed(class) = args.class else {
            return Err("generated corpora need a concrete --class".into());
        };
        let mut corpus = Vec::new();
        for k in 0..args.gen_count as u64 {
            let seed = args.config.seed.wrapping_add(k);
            let n = 4 + (k as usize % args.gen_n.saturating_sub(3).max(1));
            let spec = GenSpec::in_class(n, args.gen_p, class, seed);
            let g = generators::random_in_class(&spec).map_err(|e| e.to_string())?;
            corpus.push((format!("gen:{}:{k}", class.cli_name()), g));
        }
        Ok(corpus)
    }
}

/// The full per-graph pipeline: class check, colorer, bound check,
/// optional oracle comparison, decomposition property audit, flag scan.
pub fn verify_graph(
    id: &str,
    g: &Graph,
    sel: ClassSel,
    config: &Config,
    cert_dir: Option<&Path>,
) -> (RunRecord, Option<Certificate>) {
    let budget = budget_of(config);
    let started = Instant::now();
    let g6 = formats::graph6_encode(g).ok();
    let mut record = RunRecord {
        id: id.to_string(),
        class: String::new(),
        n: g.n(),
        omega: None,
        chi_algorithm: None,
        chi_oracle: None,
        bound_target: None,
        pass: false,
        certificate_path: None,
        flags: Vec::new(),
        error: None,
        witness_g6: None,
    };
    let fail = |mut record: RunRecord, error: String| {
        record.error = Some(error);
        record.witness_g6 = g6.clone();
        (record, None)
    };

    // class membership
    let class = match sel {
        ClassSel::Auto => match patterns::class_membership(g).first().copied() {
            Some(c) => c,
            None => return fail(record, "not in any class".into()),
        },
        ClassSel::Fixed(c) => c,
    };
    record.class = class.cli_name().to_string();
    if let Some(w) = patterns::find_forbidden(g, &class.forbidden()) {
        return fail(
            record,
            format!("not in class: induced {} at {:?}", w.pattern, w.embedding.map),
        );
    }

    // colorer
    let (coloring, cert) = match colorers::color_in_class(g, class, &budget) {
        Ok(pair) => pair,
        Err(e) => return fail(record, format!("colorer: {e}")),
    };
    record.chi_algorithm = Some(coloring.palette_size());

    // bound check
    let omega = match oracle::max_clique(g, &budget) {
        Ok(c) => c.len(),
        Err(e) => return fail(record, format!("omega oracle: {e}")),
    };
    record.omega = Some(omega);
    let target = BoundTarget::new(class, omega).target;
    record.bound_target = Some(target);
    if !coloring.is_proper_for(g) {
        return fail(record, "coloring is not proper".into());
    }
    if coloring.palette_size() > target {
        return fail(
            record,
            format!("bound violated: {} > {target}", coloring.palette_size()),
        );
    }

    let hint_blown = |config: &Config| {
        config
            .time_hint_ms
            .is_some_and(|ms| started.elapsed().as_millis() > ms as u128)
    };

    // optional oracle comparison
    let mut perfect: Option<bool> = None;
    if g.n() <= config.perfect_tier {
        perfect = oracle::is_perfect(g, config.perfect_tier).ok();
    }
    if g.n() <= config.chi_tier && !hint_blown(config) {
        match oracle::chromatic_number(g, &budget) {
            Ok((chi, _)) => {
                record.chi_oracle = Some(chi);
                if chi > coloring.palette_size() {
                    return fail(record, "oracle chi exceeds the algorithm palette".into());
                }
                if perfect == Some(true) && chi != omega {
                    return fail(record, "perfect graph with chi != omega".into());
                }
            }
            Err(e) => record.flags.push(format!("chi-oracle-skipped: {e}")),
        }
    } else if hint_blown(config) {
        record.flags.push("time-hint-exceeded".into());
    }

    // decomposition property audit for members containing a C5
    if let Some(c5) = patterns::find_c5(g) {
        let cycle: [usize; 5] = core::array::from_fn(|i| c5.map[i]);
        match decomposition::decompose_c5(g, cycle) {
            Ok(dec) => {
                let level = match class {
                    ClassId::P12P2K4e => PropertyLevel::O,
                    ClassId::TwoP1P3K4e => PropertyLevel::M,
                    ClassId::ThreeP1P2K4e => PropertyLevel::L,
                };
                let audit = decomposition::check_properties(g, &dec, level);
                if !audit.all_hold() {
                    for failure in audit.failures() {
                        record.flags.push(format!(
                            "property {}[i={}] witness {:?}",
                            failure.id,
                            failure.index + 1,
                            failure.witness
                        ));
                    }
                    return fail(record, "decomposition property audit failed".into());
                }
            }
            Err(e) => return fail(record, format!("decomposition: {e}")),
        }
    }

    // findings channel: the fallback must not fire on certified
    // non-perfect members with omega >= 4
    if cert.fallback_fired() {
        record.flags.push("structure-theorem-fallback".into());
        if omega >= 4 && perfect == Some(false) {
            record.witness_g6 = g6.clone();
            return fail(record, "fallback fired on a non-perfect member with omega >= 4".into());
        }
    }

    if let Some(dir) = cert_dir {
        let path = dir.join(format!("{}.json", id.replace(['/', ':', '#'], "_")));
        if fs::write(&path, report::certificate_json(&cert)).is_ok() {
            record.certificate_path = Some(path.display().to_string());
        }
    }

    record.pass = true;
    (record, Some(cert))
}

/// Runs the pipeline across a corpus on a deterministic work pool and
/// assembles the report (records in corpus order).
pub fn verify_corpus(
    corpus: &[(String, Graph)],
    sel: ClassSel,
    config: &Config,
    cert_dir: Option<&Path>,
) -> RunReport {
    let total_start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<(RunRecord, u64)> = pool.install(|| {
        corpus
            .par_iter()
            .map(|(id, g)| {
                let start = Instant::now();
                let (record, _) = verify_graph(id, g, sel, config, cert_dir);
                (record, start.elapsed().as_millis() as u64)
            })
            .collect()
    });
    let per_record_ms: Vec<u64> = results.iter().map(|(_, ms)| *ms).collect();
    let records: Vec<RunRecord> = results.into_iter().map(|(r, _)| r).collect();
    let timing = Timing {
        generated_at_unix_ms: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0),
        per_record_ms,
        total_ms: total_start.elapsed().as_millis() as u64,
    };
    RunReport::assemble(config.clone(), records, timing)
}

pub fn cmd_verify(args: &VerifyArgs) -> i32 {
    let corpus = match collect_corpus(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(dir) = &args.cert_dir {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: {}: {e}", dir.display());
            return EXIT_USAGE;
        }
    }
    let report = verify_corpus(&corpus, args.class, &args.config, args.cert_dir.as_deref());
    if args.json {
        println!("{}", report.to_json());
    } else {
        for (record, ms) in report.records.iter().zip(&report.timing.per_record_ms) {
            println!(
                "{} class={} n={} omega={} chi={} bound={} {} ({} ms){}",
                record.id,
                record.class,
                record.n,
                record.omega.map_or("-".into(), |v| v.to_string()),
                record.chi_algorithm.map_or("-".into(), |v| v.to_string()),
                record.bound_target.map_or("-".into(), |v| v.to_string()),
                if record.pass { "PASS" } else { "FAIL" },
                ms,
                record
                    .error
                    .as_ref()
                    .map(|e| format!(" [{e}]"))
                    .unwrap_or_default()
            );
        }
        println!(
            "total={} passed={} failed={} stable_hash={}",
            report.summary.total, report.summary.passed, report.summary.failed, report.stable_hash
        );
    }
    if let Some(path) = &args.out {
        if let Err(e) = fs::write(path, report.to_json()) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    }
}
