use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use capax::ellipsoid::Ellipsoid;
use capax::exact::{display_float, parse_rational, to_f64, ExtRational, Rational};
use capax::optimize::{
    cover_check, default_directions, default_eps, global_ellipsoid_max, kappa,
    random_concave_profile, thresholds, verify_concave_max, verify_convex_toric_max,
    verify_global_ellipsoid_max, verify_local_ellipsoid_max, GridSpec, SweepMode, Verdict,
};
use capax::ratio::{
    best_ellipsoid_power_4d, crossover_check, ratio_ellipsoid, ratio_toric, RatioValue,
};
use capax::toric::{ProfileFile, ProfileKind, ToricProfile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::Output;
use crate::{Claim, Command, DomainArg, GridPreset, VerifyArgs};

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Capacity { domain, k } => capacity(&domain, k),
        Command::Spectrum { ellipsoid, count } => spectrum(&ellipsoid, count),
        Command::Kset { ellipsoid, max_m } => kset(&ellipsoid, max_m),
        Command::Ratio { domain, k } => ratio(&domain, k),
        Command::Toric { profile, k_max } => toric(&profile, k_max),
        Command::Search { n, k } => search(n, k),
        Command::Verify(args) => verify(&args),
    }
}

fn approx(x: &Rational) -> f64 {
    display_float(to_f64(x))
}

fn parse_list(text: &str) -> Result<Vec<ExtRational>> {
    Ok(text
        .split(',')
        .map(|tok| tok.parse::<ExtRational>())
        .collect::<Result<_, _>>()?)
}

fn parse_finite_list(text: &str) -> Result<Vec<Rational>> {
    Ok(text
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()?)
}

fn parse_ellipsoid(text: &str) -> Result<Ellipsoid> {
    Ok(Ellipsoid::new(parse_list(text)?)?)
}

fn load_profile(path: &Path) -> Result<ToricProfile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: ProfileFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing profile {}", path.display()))?;
    Ok(ToricProfile::try_from(file)?)
}

enum Domain {
    Ellipsoid(Ellipsoid),
    Polydisk(Rational, Rational, ToricProfile),
    Profile(ToricProfile),
}

impl Domain {
    fn from_arg(arg: &DomainArg) -> Result<Self> {
        if let Some(text) = &arg.ellipsoid {
            return Ok(Domain::Ellipsoid(parse_ellipsoid(text)?));
        }
        if let Some(text) = &arg.polydisk {
            let ab = parse_finite_list(text)?;
            let [a, b]: [Rational; 2] = ab.try_into().map_err(|_| {
                capax::error::Error::Domain("a polydisk takes exactly two parameters".into())
            })?;
            let p = ToricProfile::polydisk(a.clone(), b.clone())?;
            return Ok(Domain::Polydisk(a, b, p));
        }
        let path = arg
            .profile
            .as_ref()
            .ok_or_else(|| anyhow!("no domain given"))?;
        Ok(Domain::Profile(load_profile(path)?))
    }

    fn to_json(&self) -> Value {
        match self {
            Domain::Ellipsoid(e) => json!({ "ellipsoid": e }),
            Domain::Polydisk(a, b, _) => json!({ "polydisk": [a.to_string(), b.to_string()] }),
            Domain::Profile(p) => json!({ "profile": p }),
        }
    }

    fn capacity(&self, k: usize) -> Result<Rational> {
        Ok(match self {
            Domain::Ellipsoid(e) => e.capacity(k)?,
            Domain::Polydisk(_, _, p) | Domain::Profile(p) => p.capacity(k)?,
        })
    }

    fn ratio(&self, k: usize) -> Result<RatioValue> {
        Ok(match self {
            Domain::Ellipsoid(e) => ratio_ellipsoid(e, k)?,
            Domain::Polydisk(_, _, p) | Domain::Profile(p) => ratio_toric(p, k)?,
        })
    }
}

fn capacity(arg: &DomainArg, k: usize) -> Result<Output> {
    let domain = Domain::from_arg(arg)?;
    let c = domain.capacity(k)?;
    let json =
        json!({ "domain": domain.to_json(), "k": k, "c_k": c.to_string(), "approx": approx(&c) });
    let row = vec![k.to_string(), c.to_string(), approx(&c).to_string()];
    Ok(Output::new(json, vec!["k", "c_k", "approx"], vec![row]))
}

fn spectrum(text: &str, count: usize) -> Result<Output> {
    let e = parse_ellipsoid(text)?;
    let entries = e.spectrum(count);
    let rows = entries
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![
                (i + 1).to_string(),
                s.value.to_string(),
                s.source_index.to_string(),
                s.multiplier.to_string(),
            ]
        })
        .collect();
    let json = json!({ "ellipsoid": e, "spectrum": entries });
    Ok(Output::new(
        json,
        vec!["k", "c_k", "source_index", "multiplier"],
        rows,
    ))
}

fn kset(text: &str, max_m: usize) -> Result<Output> {
    let e = parse_ellipsoid(text)?;
    let period = e.common_period()?;
    let ks = e.k_set(max_m)?;
    let rows = ks
        .iter()
        .enumerate()
        .map(|(m, k)| vec![(m + 1).to_string(), k.to_string()])
        .collect();
    let json = json!({ "ellipsoid": e, "period": period.to_string(), "k_set": ks });
    Ok(Output::new(json, vec!["m", "k_m"], rows))
}

fn ratio(arg: &DomainArg, k: usize) -> Result<Output> {
    let domain = Domain::from_arg(arg)?;
    let r = domain.ratio(k)?;
    let mut json = serde_json::to_value(&r)?;
    json["k"] = json!(k);
    json["domain"] = domain.to_json();
    let row = vec![
        k.to_string(),
        r.dim_half().to_string(),
        r.nth_power().to_string(),
        display_float(r.approx()).to_string(),
    ];
    Ok(Output::new(
        json,
        vec!["k", "n", "nth_power", "approx"],
        vec![row],
    ))
}

fn toric(path: &Path, k_max: usize) -> Result<Output> {
    let p = load_profile(path)?;
    let mut caps = Vec::new();
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let ext = match p.kind() {
            ProfileKind::Concave => p.capacity_concave_attained(k)?,
            ProfileKind::Convex => p.capacity_convex_attained(k)?,
        };
        let attained: Vec<[u64; 2]> = ext.attained_at.iter().map(|v| [v.v1, v.v2]).collect();
        rows.push(vec![
            k.to_string(),
            ext.value.to_string(),
            approx(&ext.value).to_string(),
        ]);
        caps.push(json!({ "k": k, "c_k": ext.value.to_string(), "approx": approx(&ext.value), "attained_at": attained }));
    }
    let json = json!({
        "profile": p,
        "area": p.area().to_string(),
        "volume": p.volume().to_string(),
        "capacities": caps,
    });
    Ok(Output::new(json, vec!["k", "c_k", "approx"], rows))
}

fn search(n: usize, k: usize) -> Result<Output> {
    let (e, r) = global_ellipsoid_max(n, k)?;
    let kappa = kappa(n)?;
    let params: Vec<String> = e.params().iter().map(|a| a.to_string()).collect();
    let row = vec![
        n.to_string(),
        k.to_string(),
        params.join(" "),
        r.nth_power().to_string(),
        display_float(r.approx()).to_string(),
        kappa.to_string(),
    ];
    let json = json!({ "n": n, "k": k, "ellipsoid": e, "ratio": r, "kappa": kappa });
    Ok(Output::new(
        json,
        vec!["n", "k", "ellipsoid", "nth_power", "approx", "kappa"],
        vec![row],
    ))
}

fn claim_name(c: Claim) -> &'static str {
    match c {
        Claim::PropEllipsoidGlobal => "prop-ellipsoid-global",
        Claim::PropEllipsoidLocal => "prop-ellipsoid-local",
        Claim::PropToricConcave => "prop-toric-concave",
        Claim::PropToricConvex => "prop-toric-convex",
        Claim::Thresholds => "thresholds",
        Claim::Crossover => "crossover",
    }
}

struct Report {
    grid: Value,
    verdict: bool,
    equality_loci: Vec<Value>,
    witness: Option<Value>,
    details: Value,
}

fn verify(args: &VerifyArgs) -> Result<Output> {
    let k = args.k;
    let report = match args.claim {
        Claim::PropEllipsoidGlobal => {
            let r = verify_global_ellipsoid_max(args.n, k, args.denom_bound)?;
            Report {
                grid: json!({ "n": args.n, "denom_bound": args.denom_bound, "points": r.grid_points }),
                verdict: r.holds,
                equality_loci: r
                    .argmax
                    .iter()
                    .map(|x| json!({ "a1_over_a2": x.to_string() }))
                    .collect(),
                witness: (!r.holds).then(|| json!({ "max_power": r.max_power.to_string() })),
                details: serde_json::to_value(&r)?,
            }
        }
        Claim::PropEllipsoidLocal => {
            let text = args.ellipsoid.as_deref().ok_or_else(|| {
                capax::error::Error::Domain("prop-ellipsoid-local needs --ellipsoid".into())
            })?;
            let e = parse_ellipsoid(text)?;
            let eps = match &args.eps {
                Some(t) => parse_finite_list(t)?,
                None => default_eps(),
            };
            let dirs = default_directions(e.dim_half());
            let r = verify_local_ellipsoid_max(&e, k, &eps, &dirs)?;
            let in_k_set = e.in_k_set(k)?;
            let confirmed = r.verdict == Verdict::ConfirmedMax;
            Report {
                grid: json!({
                    "eps": eps.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "directions": dirs,
                }),
                verdict: confirmed == in_k_set,
                equality_loci: Vec::new(),
                witness: r.witness.as_ref().map(serde_json::to_value).transpose()?,
                details: json!({ "in_k_set": in_k_set, "report": r }),
            }
        }
        Claim::PropToricConcave => {
            let (profiles, source) = if args.profile.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                let ps: Vec<_> = (0..args.random)
                    .map(|_| random_concave_profile(&mut rng, 6, 10))
                    .collect();
                (
                    ps,
                    json!({ "random": args.random, "seed": args.seed, "max_vertices": 6, "max_denominator": 10 }),
                )
            } else {
                let ps = args
                    .profile
                    .iter()
                    .map(|p| load_profile(p))
                    .collect::<Result<Vec<_>>>()?;
                let names: Vec<String> = args
                    .profile
                    .iter()
                    .map(|p| p.display().to_string())
                    .collect();
                (ps, json!({ "files": names }))
            };
            let r = verify_concave_max(k, &profiles)?;
            let loci = r
                .checks
                .iter()
                .enumerate()
                .filter(|(_, c)| c.ratio.nth_power() == &r.bound)
                .map(|(i, c)| json!({ "index": i, "profile": c.profile }))
                .collect();
            let witness = r
                .checks
                .iter()
                .find(|c| !(c.dominates && c.within_bound))
                .map(serde_json::to_value)
                .transpose()?;
            let max = r.checks.iter().map(|c| c.ratio.nth_power().clone()).max();
            Report {
                grid: source,
                verdict: r.holds,
                equality_loci: loci,
                witness,
                details: json!({
                    "bound": r.bound.to_string(),
                    "bound_attained": r.bound_attained,
                    "profiles": r.checks.len(),
                    "max_nth_power": max.map(|m| m.to_string()),
                }),
            }
        }
        Claim::PropToricConvex => {
            let grid = match args.grid {
                GridPreset::Coarse => GridSpec::COARSE,
                GridPreset::Default => GridSpec::DEFAULT,
                GridPreset::Dense => GridSpec::DENSE,
            };
            let mode = if args.unbalanced {
                SweepMode::Unbalanced
            } else {
                SweepMode::Balanced
            };
            let r = verify_convex_toric_max(k, &grid, mode)?;
            Report {
                grid: json!({ "sizes": grid, "mode": mode }),
                verdict: r.holds,
                equality_loci: r
                    .equality_loci
                    .iter()
                    .map(serde_json::to_value)
                    .collect::<Result<_, _>>()?,
                witness: r.witness.as_ref().map(serde_json::to_value).transpose()?,
                details: json!({
                    "points": r.points,
                    "bound": r.bound.to_string(),
                    "max_twice_ratio_sq": r.max_twice_ratio_sq.to_string(),
                    "identity_failures": r.identity_failures.len(),
                    "uncovered": r.uncovered.iter().map(|(i, r)| json!([i, r.to_string()])).collect::<Vec<_>>(),
                    "cover": r.cover,
                    "thresholds_ordered": r.thresholds_ordered,
                }),
            }
        }
        Claim::Thresholds => {
            let t = thresholds(k)?;
            let cover = cover_check(k)?;
            let ordering = t.ordered() && t.tight() == (k == 2);
            Report {
                grid: json!({ "k": k }),
                verdict: ordering && cover.holds,
                equality_loci: cover
                    .gaps
                    .iter()
                    .filter(|g| g.is_point())
                    .map(|g| json!({ "i": g.i, "r": g.lo.to_string() }))
                    .collect(),
                witness: cover
                    .gaps
                    .iter()
                    .find(|g| !g.equality_point)
                    .map(serde_json::to_value)
                    .transpose()?,
                details: json!({ "thresholds": t, "ordering_holds": ordering, "cover": cover }),
            }
        }
        Claim::Crossover => {
            let got = crossover_check(k)?;
            let expected = match k {
                1 => Ordering::Less,
                2 => Ordering::Equal,
                _ => Ordering::Greater,
            };
            let name = |o: Ordering| match o {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            };
            Report {
                grid: json!({ "k": k }),
                verdict: got == expected,
                equality_loci: if got == Ordering::Equal {
                    vec![json!({ "k": k })]
                } else {
                    Vec::new()
                },
                witness: None,
                details: json!({
                    "polydisk_nth_power": Rational::new((k * k).into(), 2.into()).to_string(),
                    "ellipsoid_nth_power": best_ellipsoid_power_4d(k)?.to_string(),
                    "polydisk_vs_ellipsoid": name(got),
                }),
            }
        }
    };
    let claim = claim_name(args.claim);
    let mut json = json!({
        "claim": claim,
        "k": k,
        "grid": report.grid,
        "verdict": report.verdict,
        "equality_loci": report.equality_loci,
        "details": report.details,
    });
    if let Some(w) = &report.witness {
        json["witness"] = w.clone();
    }
    let row = vec![
        claim.to_string(),
        k.to_string(),
        report.verdict.to_string(),
        report.equality_loci.len().to_string(),
    ];
    let mut out = Output::new(
        json,
        vec!["claim", "k", "verdict", "equality_loci"],
        vec![row],
    );
    out.code = if report.verdict { 0 } else { 3 };
    Ok(out)
}
