//! `cpspecht`: Carter-Payne homomorphisms between graded Specht modules.
//!
//! Multipartitions are given inline in bracket syntax, components separated by `|`,
//! parts by `,` and empty components written as nothing, `-`, `0` or `∅`
//! (for example `3,3,2,1|2|3,2` or `(∅|∅|2|3|1)`), as a JSON list of lists
//! (`[[3,3,2,1],[2],[3,2]]`) or as `@file` holding either form.
//!
//! Exit codes: 0 success, 1 input error, 2 negative answer (not a pair, relation
//! violation, mismatch), 3 resource cap, 4 internal invariant violation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cpspecht::carterpayne::{
    compose_homs, cp_pair_check, induced_hom, leading_coefficient, slice_certificate, slice_hom, Caps,
    PairCheck,
};
use cpspecht::field::{PrimeField, Rationals};
use cpspecht::homoracle::{intertwiner_space, verify_is_hom, ModuleData};
use cpspecht::specht::support::{self, RowComparison};
use cpspecht::specht::{graded_restriction_sum, Op};
use cpspecht::{Error, Multipartition, ResidueData, Result, RowIndex, SpechtModule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cpspecht", version, about = "Graded Specht modules and cyclotomic Carter-Payne homomorphisms")]
#[command(after_help = "Multipartitions: `3,3,2,1|2|3,2`, `(∅|∅|2|3|1)`, `[[3,3,2,1],[2],[3,2]]` or `@file`.")]
struct Cli {
    #[command(flatten)]
    cfg: Config,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// quantum characteristic (0 or ≥ 2)
    #[arg(long, global = true, default_value_t = 0)]
    e: u32,
    /// multicharge, comma separated
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    charge: String,
    /// coefficients for the intertwiner solver: int, rat or fp:<p>
    #[arg(long, global = true, default_value = "int")]
    coeff: String,
    /// maximal number of standard tableaux of ν for building a map
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap_std: u128,
    /// maximal number of rewrite steps per action
    #[arg(long, global = true, default_value_t = 10_000_000)]
    cap_steps: u64,
    /// worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether (λ, μ) is a cyclotomic Carter-Payne pair and print its certificate.
    CheckPair { lambda: String, mu: String },
    /// Build the homomorphism S^λ⟨δ⟩ → S^μ.
    BuildHom {
        lambda: String,
        mu: String,
        /// also check the matrix against the generator actions
        #[arg(long)]
        verify: bool,
    },
    /// Compare Θ^ρ_μ ∘ Θ^λ_ρ with Θ^λ_μ.
    Compose { lambda: String, rho: String, mu: String },
    /// Build the map of a row-sliced pair; `--cut l,a` may be repeated.
    Slice {
        lambda: String,
        mu: String,
        #[arg(long = "cut", required = true)]
        cuts: Vec<String>,
        /// print the certificate only
        #[arg(long)]
        certificate_only: bool,
    },
    /// Dimensions of the graded intertwiner space.
    HomDim {
        lambda: String,
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Run the pair check over all multipartitions of n.
    Sweep {
        #[arg(long)]
        n: usize,
        /// build each map and verify it
        #[arg(long)]
        build: bool,
        /// compare with the intertwiner solver (implies --build)
        #[arg(long)]
        oracle: bool,
    },
    /// Dimension, graded dimension and optionally the basis of S^μ.
    SpechtInfo {
        shape: String,
        #[arg(long)]
        basis: bool,
    },
    /// Relation gate, restriction identity and support suites.
    Selftest {
        /// shapes to test; default: all multipartitions of size ≤ 4
        #[arg(long = "shape")]
        shapes: Vec<String>,
        /// randomized instances per shape and suite
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// corrupt one memo entry first (demonstrates the gate)
        #[arg(long)]
        corrupt: bool,
    },
}

/// Result of a subcommand: the report and the exit code it implies.
struct Outcome {
    code: u8,
    json: Value,
    tsv: Vec<Vec<String>>,
}

impl Outcome {
    fn ok(json: Value, tsv: Vec<Vec<String>>) -> Self {
        Outcome { code: 0, json, tsv }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn kv(pairs: &[(&str, String)]) -> Vec<Vec<String>> {
    pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect()
}

fn parse_mp(arg: &str) -> Result<Multipartition> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    let text = text.trim();
    if text.starts_with('[') {
        serde_json::from_str(text).map_err(|e| Error::input(format!("malformed JSON multipartition: {e}")))
    } else {
        Multipartition::parse(text)
    }
}

fn parse_cut(arg: &str) -> Result<RowIndex> {
    let parts: Vec<&str> = arg.trim_matches(|c| c == '(' || c == ')').split(',').collect();
    let nums: Vec<usize> = parts
        .iter()
        .map(|x| x.trim().parse().map_err(|_| Error::input(format!("cut: bad row index '{arg}'"))))
        .collect::<Result<_>>()?;
    match nums[..] {
        [l, r] if l > 0 && r > 0 => Ok(RowIndex { l, r }),
        _ => Err(Error::input(format!("cut: expected l,a with l, a ≥ 1, got '{arg}'"))),
    }
}

impl Config {
    fn residue_data(&self) -> Result<ResidueData> {
        let charge: Vec<i64> = self
            .charge
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::input(format!("charge: bad entry '{x}'"))))
            .collect::<Result<_>>()?;
        ResidueData::new(self.e, charge).map_err(|e| Error::input(format!("e/charge: {e}")))
    }

    fn caps(&self) -> Caps {
        Caps { max_std: self.cap_std, max_steps: self.cap_steps, parallel: true }
    }

    fn validate(&self) -> Result<()> {
        self.residue_data()?;
        self.coeff_domain()?;
        if self.cap_std == 0 {
            return Err(Error::input("cap-std must be positive"));
        }
        if self.cap_steps == 0 {
            return Err(Error::input("cap-steps must be positive"));
        }
        Ok(())
    }

    fn coeff_domain(&self) -> Result<Coeff> {
        match self.coeff.as_str() {
            "int" | "rat" => Ok(Coeff::Rational),
            s => match s.strip_prefix("fp:") {
                Some(p) => {
                    let p: u64 = p.parse().map_err(|_| Error::input(format!("coeff: bad prime in '{s}'")))?;
                    PrimeField::new(p).map_err(|e| Error::input(format!("coeff: {e}")))?;
                    Ok(Coeff::Prime(p))
                }
                None => Err(Error::input(format!("coeff: expected int, rat or fp:<p>, got '{s}'"))),
            },
        }
    }
}

enum Coeff {
    Rational,
    Prime(u64),
}

fn check_pair(cfg: &Config, lambda: &str, mu: &str) -> Result<Outcome> {
    let rd = cfg.residue_data()?;
    let (l, m) = (parse_mp(lambda)?, parse_mp(mu)?);
    Ok(match cp_pair_check(&l, &m, &rd)? {
        PairCheck::Pair(c) => {
            let tsv = kv(&[
                ("lambda", l.to_string()),
                ("mu", m.to_string()),
                ("gamma", c.gamma.to_string()),
                ("a", c.components.a.to_string()),
                ("b", c.components.b.to_string()),
                ("c", c.components.c.to_string()),
                ("d", c.components.d.to_string()),
                ("delta", c.delta().to_string()),
                ("theta", theta_string(c.n, &c.theta_exponents_collected())),
                ("tail", format!("{:?}", c.tail)),
            ]);
            let mut json = to_json(&c);
            json["delta"] = json!(c.delta());
            json["theta_exponents"] = json!(c.theta_exponents_collected());
            Outcome::ok(json, tsv)
        }
        PairCheck::Rejected(r) => {
            log::info!("not a Carter-Payne pair: {}: {}", r.reason.as_str(), r.detail);
            Outcome {
                code: 2,
                json: json!({"lambda": l, "mu": m, "rejected": r.reason, "detail": r.detail}),
                tsv: kv(&[("rejected", r.reason.as_str().into()), ("detail", r.detail)]),
            }
        }
    })
}

fn theta_string(n: usize, exps: &[usize]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(g, &k)| if k == 1 { format!("y{}", n + g + 1) } else { format!("y{}^{k}", n + g + 1) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn build_hom(cfg: &Config, lambda: &str, mu: &str, verify: bool) -> Result<Outcome> {
    let rd = cfg.residue_data()?;
    let (l, m) = (parse_mp(lambda)?, parse_mp(mu)?);
    let cert = cp_pair_check(&l, &m, &rd)?.certificate()?;
    let h = induced_hom(&cert, &cfg.caps())?;
    let lead = leading_coefficient(&cert, &h)?;
    if !lead.is_one() {
        return Err(Error::internal(format!("leading coefficient is {lead}, expected 1")));
    }
    let target = SpechtModule::new(&m, &rd)?;
    let image: Vec<Value> = h.matrix.cols[0]
        .iter()
        .map(|(i, c)| json!({"tableau": target.tableau(*i), "coeff": c.to_string()}))
        .collect();
    let leading = cert.leading_target()?;
    let mut json = json!({
        "hom": h,
        "delta": cert.delta(),
        "theta": theta_string(cert.n, &cert.theta_exponents_collected()),
        "leading": {"source": cert.lambda.to_string(), "tableau": leading, "coeff": lead.to_string()},
        "image_of_initial": image,
    });
    let mut tsv = kv(&[
        ("degree", h.degree.to_string()),
        ("rows", h.matrix.rows.to_string()),
        ("cols", h.matrix.ncols().to_string()),
        ("leading_tableau", leading.to_string()),
        ("leading_coeff", lead.to_string()),
    ]);
    let mut code = 0;
    if verify {
        let src = ModuleData::from_module(&SpechtModule::new(&l, &rd)?)?;
        let tgt = ModuleData::from_module(&target)?;
        let check = verify_is_hom(&h, &src, &tgt);
        if !check.ok {
            code = 4;
        }
        tsv.push(vec!["verified".into(), check.ok.to_string()]);
        json["verified"] = to_json(&check);
    }
    for (i, j, c) in h.matrix.triples() {
        tsv.push(vec![i.to_string(), j.to_string(), c.to_string()]);
    }
    Ok(Outcome { code, json, tsv })
}

fn compose(cfg: &Config, lambda: &str, rho: &str, mu: &str) -> Result<Outcome> {
    let rd = cfg.residue_data()?;
    let (l, r, m) = (parse_mp(lambda)?, parse_mp(rho)?, parse_mp(mu)?);
    let rep = compose_homs(&l, &r, &m, &rd, &cfg.caps())?;
    let ok = rep.matrices_compose && rep.operators_compose && rep.delta_lambda_mu == rep.delta_lambda_rho + rep.delta_rho_mu;
    let tsv = kv(&[
        ("delta_lambda_rho", rep.delta_lambda_rho.to_string()),
        ("delta_rho_mu", rep.delta_rho_mu.to_string()),
        ("delta_lambda_mu", rep.delta_lambda_mu.to_string()),
        ("operators_compose", rep.operators_compose.to_string()),
        ("matrices_compose", rep.matrices_compose.to_string()),
    ]);
    Ok(Outcome { code: if ok { 0 } else { 2 }, json: to_json(&rep), tsv })
}

fn slice(cfg: &Config, lambda: &str, mu: &str, cuts: &[String], certificate_only: bool) -> Result<Outcome> {
    let rd = cfg.residue_data()?;
    let (l, m) = (parse_mp(lambda)?, parse_mp(mu)?);
    let cuts: Vec<RowIndex> = cuts.iter().map(|c| parse_cut(c)).collect::<Result<_>>()?;
    let sc = slice_certificate(&l, &m, &cuts, &rd)?;
    let n = l.size();
    let theta = sc.theta_indices.iter().map(|g| format!("y{}", n + g)).collect::<Vec<_>>().join(" ");
    let mut tsv = kv(&[("delta", sc.delta.to_string()), ("theta", theta.clone())]);
    let mut json = json!({"certificate": sc, "theta": theta});
    if !certificate_only {
        let h = slice_hom(&l, &m, &cuts, &rd, &cfg.caps())?;
        tsv.push(vec!["rows".into(), h.matrix.rows.to_string()]);
        tsv.push(vec!["cols".into(), h.matrix.ncols().to_string()]);
        json["hom"] = to_json(&h);
    }
    Ok(Outcome::ok(json, tsv))
}

fn hom_dim(cfg: &Config, lambda: &str, mu: &str, degree: Option<i64>) -> Result<Outcome> {
    let rd = cfg.residue_data()?;
    let (l, m) = (parse_mp(lambda)?, parse_mp(mu)?);
    let ds = degree.map(|d| vec![d]);
    let space = match cfg.coeff_domain()? {
        Coeff::Rational => intertwiner_space(&l, &m, &rd, ds.as_deref(), &Rationals)?,
        Coeff::Prime(p) => intertwiner_space(&l, &m, &rd, ds.as_deref(), &PrimeField::new(p)?)?,
    };
    let mut tsv: Vec<Vec<String>> = vec![vec!["degree".into(), "dim".into()]];
    tsv.extend(space.degree_dims.iter().map(|(d, k)| vec![d.to_string(), k.to_string()]));
    let mut json = to_json(&space);
    json["total_dim"] = json!(space.total_dim());
    Ok(Outcome::ok(json, tsv))
}

#[derive(Serialize)]
struct SweepRow {
    lambda: String,
    mu: String,
    delta: i64,
    gamma: usize,
    built: Option<bool>,
    verified: Option<bool>,
    oracle_dim: Option<usize>,
    oracle_contains: Option<bool>,
    error: Option<String>,
}

fn sweep_pair(l: &Multipartition, m: &Multipartition, rd: &ResidueData, caps: &Caps, build: bool, oracle: bool) -> Option<SweepRow> {
    let cert = match cp_pair_check(l, m, rd) {
        Ok(PairCheck::Pair(c)) => c,
        Ok(PairCheck::Rejected(_)) => return None,
        Err(e) => {
            return Some(SweepRow {
                lambda: l.to_string(),
                mu: m.to_string(),
                delta: 0,
                gamma: 0,
                built: None,
                verified: None,
                oracle_dim: None,
                oracle_contains: None,
                error: Some(e.to_string()),
            })
        }
    };
    let mut row = SweepRow {
        lambda: l.to_string(),
        mu: m.to_string(),
        delta: cert.delta(),
        gamma: cert.gamma,
        built: None,
        verified: None,
        oracle_dim: None,
        oracle_contains: None,
        error: None,
    };
    if !(build || oracle) {
        return Some(row);
    }
    let run = || -> Result<(bool, Option<(usize, bool)>)> {
        let h = induced_hom(&cert, &Caps { parallel: false, ..*caps })?;
        let lead = leading_coefficient(&cert, &h)?;
        let src = ModuleData::from_module(&SpechtModule::new(l, rd)?)?;
        let tgt = ModuleData::from_module(&SpechtModule::new(m, rd)?)?;
        let ok = lead.is_one() && verify_is_hom(&h, &src, &tgt).ok;
        let orc = if oracle {
            let block = cpspecht::homoracle::hom_block(&src, &tgt, h.degree, &Rationals);
            Some((block.dim(), block.contains(&h.matrix)))
        } else {
            None
        };
        Ok((ok, orc))
    };
    match run() {
        Ok((ok, orc)) => {
            row.built = Some(true);
            row.verified = Some(ok);
            if let Some((d, c)) = orc {
                row.oracle_dim = Some(d);
                row.oracle_contains = Some(c);
            }
        }
        Err(e) => {
            row.built = Some(false);
            row.error = Some(e.to_string());
        }
    }
    Some(row)
}

fn sweep(cfg: &Config, n: usize, build: bool, oracle: bool) -> Result<Outcome> {
    let rd = cfg.residue_data()?;
    let caps = cfg.caps();
    let all = Multipartition::all(n, rd.level());
    let pairs: Vec<(usize, usize)> =
        (0..all.len()).flat_map(|i| (0..all.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let rows: Vec<SweepRow> = if n == 0 {
        Vec::new()
    } else {
        pairs
            .par_iter()
            .filter_map(|&(i, j)| sweep_pair(&all[i], &all[j], &rd, &caps, build, oracle))
            .collect()
    };
    let bad = rows.iter().filter(|r| {
        r.error.is_some() || r.verified == Some(false) || r.oracle_contains == Some(false) || r.oracle_dim == Some(0)
    });
    let mismatches = bad.count();
    let mut tsv = vec![vec![
        "lambda".to_string(),
        "mu".into(),
        "gamma".into(),
        "delta".into(),
        "verified".into(),
        "oracle_dim".into(),
        "oracle_contains".into(),
        "error".into(),
    ]];
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    for r in &rows {
        tsv.push(vec![
            r.lambda.clone(),
            r.mu.clone(),
            r.gamma.to_string(),
            r.delta.to_string(),
            opt(r.verified.map(|v| v.to_string())),
            opt(r.oracle_dim.map(|v| v.to_string())),
            opt(r.oracle_contains.map(|v| v.to_string())),
            opt(r.error.clone()),
        ]);
    }
    log::info!("{} pairs, {mismatches} mismatches", rows.len());
    let json = json!({"e": rd.e, "charge": rd.charge, "n": n, "pairs": rows, "mismatches": mismatches});
    Ok(Outcome { code: if mismatches == 0 { 0 } else { 2 }, json, tsv })
}

fn specht_info(cfg: &Config, shape: &str, basis: bool) -> Result<Outcome> {
    let rd = cfg.residue_data()?;
    let mp = parse_mp(shape)?;
    let count = mp.count_standard();
    if count > cfg.cap_std {
        return Err(Error::ResourceCap(format!("#Std({mp}) = {count} exceeds {}", cfg.cap_std)));
    }
    let m = SpechtModule::new(&mp, &rd)?;
    let gd = m.graded_dimension();
    let mut tsv = vec![vec!["dim".into(), m.dim().to_string()]];
    tsv.extend(gd.iter().map(|(d, k)| vec![format!("q^{d}"), k.to_string()]));
    let mut json = json!({"shape": mp, "dim": m.dim(), "graded_dimension": gd});
    if basis {
        let b: Vec<Value> = (0..m.dim() as u32)
            .map(|id| {
                json!({"tableau": m.tableau(id), "degree": m.degree(id), "residues": m.residue_sequence(id), "word": m.reduced_word(id)})
            })
            .collect();
        json["basis"] = json!(b);
    }
    Ok(Outcome::ok(json, tsv))
}

#[derive(Serialize)]
struct SelftestRow {
    shape: String,
    relations_checked: usize,
    violations: Vec<String>,
    restriction_identity: bool,
    suites: Vec<(String, usize, usize)>,
}

fn selftest(cfg: &Config, shapes: &[String], instances: usize, corrupt: bool) -> Result<Outcome> {
    let rd = cfg.residue_data()?;
    let shapes: Vec<Multipartition> = if shapes.is_empty() {
        (1..=4).flat_map(|n| Multipartition::all(n, rd.level())).collect()
    } else {
        shapes.iter().map(|s| parse_mp(s)).collect::<Result<_>>()?
    };
    let rows: Vec<Result<SelftestRow>> = shapes
        .par_iter()
        .enumerate()
        .map(|(k, mp)| {
            let m = SpechtModule::new(mp, &rd)?.with_cap_steps(cfg.cap_steps);
            if corrupt && k == 0 && m.dim() > 0 && m.n() > 0 {
                let bogus = m.act_basis(0, Op::Y(1))?.as_ref().clone();
                let mut bogus = bogus;
                bogus.push((0, cpspecht::Int::one()));
                bogus.sort_by_key(|x| x.0);
                bogus.dedup_by_key(|x| x.0);
                m.corrupt_memo(0, Op::Y(1), bogus);
            }
            let rep = m.verify_relations()?;
            let restriction_identity = m.n() == 0 || graded_restriction_sum(mp, &rd)? == m.graded_dimension();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let suites = [
                support::dom_tableaux(&m, &mut rng, instances)?,
                support::y_down(&m, &mut rng, instances)?,
                support::filtration(&m, &mut rng, instances, RowComparison::Iterated)?,
                support::pushing(&m, &mut rng, instances)?,
            ];
            Ok(SelftestRow {
                shape: mp.to_string(),
                relations_checked: rep.checked,
                violations: rep.violations.iter().map(|v| format!("{}: {}", v.relation, v.detail)).collect(),
                restriction_identity,
                suites: suites.iter().map(|s| (s.name.clone(), s.instances, s.failures.len())).collect(),
            })
        })
        .collect();
    let rows: Vec<SelftestRow> = rows.into_iter().collect::<Result<_>>()?;
    let failed = rows
        .iter()
        .filter(|r| !r.violations.is_empty() || !r.restriction_identity || r.suites.iter().any(|s| s.2 > 0))
        .count();
    let mut tsv = vec![vec![
        "shape".to_string(),
        "relations_checked".into(),
        "violations".into(),
        "restriction_identity".into(),
        "suite_failures".into(),
    ]];
    for r in &rows {
        for v in &r.violations {
            log::warn!("{}: {v}", r.shape);
        }
        tsv.push(vec![
            r.shape.clone(),
            r.relations_checked.to_string(),
            r.violations.len().to_string(),
            r.restriction_identity.to_string(),
            r.suites.iter().map(|s| s.2).sum::<usize>().to_string(),
        ]);
    }
    let json = json!({"e": rd.e, "charge": rd.charge, "shapes": rows, "failed": failed});
    Ok(Outcome { code: if failed == 0 { 0 } else { 4 }, json, tsv })
}

fn run(cli: &Cli) -> Result<Outcome> {
    cli.cfg.validate()?;
    let cfg = &cli.cfg;
    match &cli.cmd {
        Command::CheckPair { lambda, mu } => check_pair(cfg, lambda, mu),
        Command::BuildHom { lambda, mu, verify } => build_hom(cfg, lambda, mu, *verify),
        Command::Compose { lambda, rho, mu } => compose(cfg, lambda, rho, mu),
        Command::Slice { lambda, mu, cuts, certificate_only } => slice(cfg, lambda, mu, cuts, *certificate_only),
        Command::HomDim { lambda, mu, degree } => hom_dim(cfg, lambda, mu, *degree),
        Command::Sweep { n, build, oracle } => sweep(cfg, *n, *build, *oracle),
        Command::SpechtInfo { shape, basis } => specht_info(cfg, shape, *basis),
        Command::Selftest { shapes, instances, corrupt } => selftest(cfg, shapes, *instances, *corrupt),
    }
}

fn render(out: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
        Format::Tsv => out.tsv.iter().map(|r| r.join("\t") + "\n").collect(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if cli.cfg.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.cfg.jobs).build_global() {
            log::warn!("could not configure {} workers: {e}", cli.cfg.jobs);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            let kind = match e {
                Error::Input(_) => "input_error",
                Error::Rejected(_) => "rejected",
                Error::ResourceCap(_) => "resource_cap",
                Error::Internal(_) => "internal_error",
            };
            Outcome {
                code: e.exit_code() as u8,
                json: json!({"error": kind, "message": e.to_string()}),
                tsv: vec![vec!["error".into(), kind.into(), e.to_string()]],
            }
        }
    };
    let text = render(&outcome, cli.cfg.format);
    let written = match &cli.cfg.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code)
}
