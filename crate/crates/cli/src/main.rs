use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dualpart::krawtchouk::{co_nonreflexivity_verdict, default_width, ku_build, ku_eval, ku_roots, Verdict};
use dualpart::macwilliams::{
    conjecture21_report, macwilliams_verify, pami_onedim_check, parse_generator_file, PrimeFieldSpace,
};
use dualpart::partitions::{
    induce_co, induce_q, left_dual, reflexivity_check, theorem32_check, theorem41_check,
};
use dualpart::posets::PosetFile;
use dualpart::{Budget, Covering, CoveringMetric, Error, GroupProduct, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const BUDGET_ENV: &str = "DUALPART_BUDGET";

#[derive(Parser)]
#[command(name = "dualpart", version, about = "Dual partitions, reflexivity verdicts and MacWilliams checks")]
struct Cli {
    /// Budget file (JSON). Falls back to $DUALPART_BUDGET, then built-in defaults.
    #[arg(long, global = true)]
    budget: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on a poset file: hierarchy, UDP, automorphisms, ideals, equivalence check.
    Poset {
        /// Poset JSON: {"n", "relations", "weights", "orders"}.
        file: PathBuf,
    },
    /// Dual partition of a partition spec on a group file.
    Dual {
        /// Group JSON: {"coordinates": [[h, ...], ...]}.
        group: PathBuf,
        /// hamming | pk:K | covering:FILE | poset:FILE | trivial | singletons
        spec: String,
    },
    /// TSV scan of reflexivity verdicts for CO(F_q^n, P(k)).
    ScanCo {
        /// Order of each coordinate.
        #[arg(long)]
        q: u64,
        /// Inclusive range A..B.
        #[arg(long)]
        n: String,
        /// all or a single K.
        #[arg(long, default_value = "all")]
        k: String,
        /// Largest q^n confirmed by brute force.
        #[arg(long, default_value_t = 1 << 16)]
        brute_max: u64,
    },
    /// Krawtchouk polynomial coefficients, integer values and roots.
    Krawtchouk {
        #[arg(long)]
        n: u64,
        /// Degree.
        #[arg(long)]
        k: u64,
        #[arg(long)]
        q: u64,
        /// Also isolate the real roots.
        #[arg(long)]
        roots: bool,
    },
    /// MacWilliams identity for a linear code file.
    Macwilliams {
        /// Generator file: header "p N [k_1 ...]", then one row per generator.
        code: PathBuf,
        /// Partition spec for the dual side.
        #[arg(long)]
        gamma: String,
        /// A partition spec, or `dual` for l(Γ).
        #[arg(long, default_value = "dual")]
        lambda: String,
    },
    /// Evidence-tiered report on the MEP for CO(F_q^n, P(k)).
    Refute {
        /// Prime field size.
        q: u32,
        n: usize,
        k: usize,
    },
    /// Randomized duality-axiom suite on small groups.
    CheckDuality {
        /// Number of random instances.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

struct Failure {
    code: &'static str,
    detail: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            detail: e.to_string(),
        }
    }
}

fn fail(code: &'static str, detail: impl Into<String>) -> Failure {
    Failure {
        code,
        detail: detail.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| fail("io", format!("{}: {e}", path.display())))
}

fn load_budget(path: Option<&Path>) -> CliResult<Budget> {
    let path = match path {
        Some(p) => p.to_path_buf(),
        None => match std::env::var_os(BUDGET_ENV) {
            Some(p) => PathBuf::from(p),
            None => return Ok(Budget::default()),
        },
    };
    serde_json::from_str(&read(&path)?).map_err(|e| fail("invalid_input", format!("budget file: {e}")))
}

/// Builds the partition named by `spec` on `g`.
fn partition_spec(spec: &str, g: &GroupProduct, budget: &Budget) -> CliResult<Partition> {
    let n = g.num_coordinates();
    let (head, arg) = spec.split_once(':').unwrap_or((spec, ""));
    match head.to_ascii_lowercase().as_str() {
        "hamming" => Ok(induce_co(g, &CoveringMetric::uniform(n, 1)?, budget)?),
        "pk" => {
            let k = arg
                .parse()
                .map_err(|_| fail("invalid_input", format!("pk needs an integer, got {arg:?}")))?;
            Ok(induce_co(g, &CoveringMetric::uniform(n, k)?, budget)?)
        }
        "covering" => {
            let c = Covering::from_json(&read(Path::new(arg))?)?;
            Ok(induce_co(g, &CoveringMetric::Explicit(c), budget)?)
        }
        "poset" => {
            let f = PosetFile::from_json(&read(Path::new(arg))?)?;
            Ok(induce_q(g, &f.poset()?, &f.weights()?, budget)?)
        }
        "trivial" => Ok(Partition::trivial(g)),
        "singletons" => Ok(Partition::singletons(g)),
        _ => Err(fail("invalid_input", format!("unknown partition spec {spec:?}"))),
    }
}

fn partition_value(p: &Partition) -> Value {
    serde_json::from_str(&p.to_json()).expect("partition export is JSON")
}

fn cmd_poset(file: &Path, budget: &Budget) -> CliResult<Value> {
    let f = PosetFile::from_json(&read(file)?)?;
    let p = f.poset()?;
    let omega = f.weights()?;
    let g = f.group()?;
    let udp = p.udp_check(&omega, budget)?;
    let aut = p.automorphisms::<()>(None, budget)?.len();
    let ideals = p.ideals(budget)?.len();
    let hierarchical = p.is_hierarchical();
    let (report, note) = if !hierarchical {
        (Value::Null, Some("poset is not hierarchical; the equivalence applies to hierarchical posets only"))
    } else if !omega.is_integer() {
        (Value::Null, Some("weights are not all integers; the equivalence needs integer weights"))
    } else {
        let r = theorem32_check(&g, &p, &omega, budget)?;
        let mut v = serde_json::to_value(r).expect("report serialises");
        v["equivalent"] = json!(r.equivalent());
        (v, None)
    };
    Ok(json!({
        "n": p.size(),
        "hierarchical": hierarchical,
        "udp": udp.holds,
        "udp_witness": udp.witness.map(|(a, b)| [a.to_vec(), b.to_vec()]),
        "automorphisms": aut,
        "ideals": ideals,
        "equivalence_report": report,
        "note": note,
    }))
}

fn cmd_dual(group: &Path, spec: &str, budget: &Budget) -> CliResult<Value> {
    let g: GroupProduct = serde_json::from_str(&read(group)?)
        .map_err(|e| fail("invalid_input", format!("group JSON line {} column {}: {e}", e.line(), e.column())))?;
    let gamma = partition_spec(spec, &g, budget)?;
    let rep = reflexivity_check(&gamma, true, budget)?;
    let mut out = json!({
        "order": g.order(),
        "classes": rep.classes,
        "dual_classes": rep.dual_classes,
        "reflexive": rep.reflexive,
        "dual": partition_value(&rep.dual),
    });
    if let Some(spec_members) = spec.strip_prefix("covering:") {
        let c = Covering::from_json(&read(Path::new(spec_members))?)?;
        if c.is_antichain() {
            out["antichain_report"] = serde_json::to_value(theorem41_check(&g, &c, budget)?).expect("report serialises");
        }
    }
    Ok(out)
}

fn parse_range(s: &str) -> CliResult<RangeInclusive<u64>> {
    let bad = || fail("invalid_input", format!("range {s:?} is not of the form A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    Ok(a..=b)
}

fn cmd_scan_co(q: u64, n: &str, k: &str, brute_max: u64, budget: &Budget) -> CliResult<String> {
    if q < 2 || q > u32::MAX as u64 {
        return Err(fail("invalid_input", format!("q = {q} out of range")));
    }
    let range = parse_range(n)?;
    let fixed_k = match k {
        "all" => None,
        k => Some(
            k.parse::<u64>()
                .map_err(|_| fail("invalid_input", format!("--k must be all or an integer, got {k:?}")))?,
        ),
    };
    let mut out = String::from("q\tn\tk\tverdict\tcriterion\tco_classes\tlambda_lower_bound\tbrute_force_confirmed\n");
    for n in range {
        if n == 0 {
            continue;
        }
        let ks: Vec<u64> = match fixed_k {
            Some(k) if k >= 1 && k <= n => vec![k],
            Some(_) => Vec::new(),
            None => (1..=n).collect(),
        };
        for k in ks {
            let v = co_nonreflexivity_verdict(n, k, q)?;
            let size = (q as u128).checked_pow(n as u32);
            let brute = match size {
                Some(s) if s <= brute_max as u128 => {
                    let g = GroupProduct::uniform(n as usize, q as u32)?;
                    let co = induce_co(&g, &CoveringMetric::uniform(n as usize, k as usize)?, budget)?;
                    Some(left_dual(&co, budget)?.len() as u64 == v.co_classes)
                }
                _ => None,
            };
            let (criterion, confirmed) = match (v.verdict, brute) {
                (_, None) => (v.criterion.clone(), "skipped"),
                (Verdict::Undecided, Some(r)) => (
                    format!("{}; brute force: {}", v.criterion, if r { "reflexive" } else { "non-reflexive" }),
                    "skipped",
                ),
                (verdict, Some(r)) => (
                    v.criterion.clone(),
                    if r == (verdict == Verdict::Reflexive) { "yes" } else { "no" },
                ),
            };
            out.push_str(&format!(
                "{q}\t{n}\t{k}\t{}\t{criterion}\t{}\t{}\t{confirmed}\n",
                v.verdict, v.co_classes, v.lambda_lower_bound
            ));
        }
    }
    Ok(out)
}

fn cmd_krawtchouk(n: u64, k: u64, q: u64, roots: bool) -> CliResult<Value> {
    let p = ku_build(n, k, q)?;
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    let values: Vec<String> = (0..=n).map(|s| ku_eval(n, k, q, s).to_string()).collect();
    let mut out = json!({"n": n, "k": k, "q": q, "coefficients": coeffs, "values": values});
    if roots {
        let r = if k == 0 { Vec::new() } else { ku_roots(n, k, q, &default_width())? };
        out["roots"] = r
            .iter()
            .map(|r| json!({"lo": r.lo.to_string(), "hi": r.hi.to_string(), "approx": r.midpoint()}))
            .collect();
    }
    Ok(out)
}

fn cmd_macwilliams(code: &Path, gamma: &str, lambda: &str, budget: &Budget) -> CliResult<Value> {
    let c = parse_generator_file(&read(code)?)?;
    let space: &PrimeFieldSpace = c.space();
    let g = space.group();
    let gamma_p = partition_spec(gamma, g, budget)?;
    let lambda_p = if lambda == "dual" {
        left_dual(&gamma_p, budget)?
    } else {
        partition_spec(lambda, g, budget)?
    };
    let dual = c.dual();
    let check = macwilliams_verify(&c, &lambda_p, &gamma_p, budget)?;
    let invariant = space.is_f_invariant(&lambda_p)? && space.is_f_invariant(&gamma_p)?;
    let onedim = if invariant {
        serde_json::to_value(pami_onedim_check(space, &lambda_p, &gamma_p, budget)?).expect("report serialises")
    } else {
        Value::Null
    };
    Ok(json!({
        "p": space.p(),
        "N": space.dim(),
        "dim": c.dim(),
        "dual_dim": dual.dim(),
        "lambda_classes": lambda_p.len(),
        "gamma_classes": gamma_p.len(),
        "code_lambda_distribution": c.distribution(&lambda_p, budget)?,
        "dual_gamma_distribution": dual.distribution(&gamma_p, budget)?,
        "identity_holds": check.holds(),
        "one_dimensional_check": onedim,
    }))
}

fn cmd_check_duality(count: usize, seed: u64, budget: &Budget) -> CliResult<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut reflexive = 0;
    for i in 0..count {
        let n = rng.gen_range(1..=4);
        let h: Vec<Vec<u32>> = (0..n).map(|_| vec![rng.gen_range(2..=5)]).collect();
        let g = GroupProduct::new(h.clone())?;
        let classes = rng.gen_range(1..=5u32);
        let ids: Vec<u32> = (0..g.order()).map(|_| rng.gen_range(0..classes)).collect();
        let gamma = Partition::from_ids(&g, ids)?;
        let rep = reflexivity_check(&gamma, true, budget)?;
        let ok = rep.dual.has_identity_singleton()
            && rep.classes <= rep.dual_classes
            && rep.bidual_finer == Some(true)
            && rep.reflexive == (rep.bidual.as_ref() == Some(&gamma));
        reflexive += rep.reflexive as usize;
        if !ok {
            failures.push(json!({"case": i, "coordinates": h}));
        }
    }
    Ok(json!({"seed": seed, "count": count, "reflexive": reflexive, "failures": failures}))
}

fn run(cli: Cli) -> CliResult<String> {
    let budget = load_budget(cli.budget.as_deref())?;
    let pretty = |v: Value| serde_json::to_string_pretty(&v).expect("JSON output") + "\n";
    match cli.command {
        Command::Poset { file } => cmd_poset(&file, &budget).map(pretty),
        Command::Dual { group, spec } => cmd_dual(&group, &spec, &budget).map(pretty),
        Command::ScanCo { q, n, k, brute_max } => cmd_scan_co(q, &n, &k, brute_max, &budget),
        Command::Krawtchouk { n, k, q, roots } => cmd_krawtchouk(n, k, q, roots).map(pretty),
        Command::Macwilliams { code, gamma, lambda } => cmd_macwilliams(&code, &gamma, &lambda, &budget).map(pretty),
        Command::Refute { q, n, k } => {
            let r = conjecture21_report(q, n, k, &budget)?;
            Ok(pretty(serde_json::to_value(r).expect("report serialises")))
        }
        Command::CheckDuality { count } => cmd_check_duality(count, cli.seed, &budget).map(pretty),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.to_string();
            let detail: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("error: code=usage detail={}", detail.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: code={} detail={}", f.code, f.detail.replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
