use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use entrolen::entropy::{
    addition_check, certified_upper_bound, estimate, estimate_quotient, zero_divisor_scan,
    BoundConfig, SesRow,
};
use entrolen::folner::BoundaryRow;
use entrolen::shift::parse_generator_list;
use entrolen::tiling::{check_quasi_tiling, greedy_quasi_tile};
use entrolen::{
    rational, CocycleData, CrossedElement, Error, Field, FolnerScheme, GroupKind, GroupSpec,
    SchemeKind, Sigma, StabilizationConfig, SubshiftPresentation,
};

use crate::settings::{Settings, MAX_NMAX, MAX_RADIUS};
use crate::Command;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    CheckFailed,
    BudgetExhausted,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::CheckFailed => 1,
            Outcome::BudgetExhausted => 3,
        }
    }
}

pub fn run(cmd: Command, s: &Settings) -> Result<Outcome> {
    match cmd {
        Command::Entropy => entropy(s),
        Command::QuotientEntropy => quotient_entropy(s),
        Command::AdditionCheck => addition(s),
        Command::Zerodiv => zerodiv(s),
        Command::Tile => tile(s),
        Command::FolnerRatios => folner_ratios(s),
        Command::ValidateCocycle => validate_cocycle(s),
    }
}

/// Writes the primary output to `--output`, or to stdout.
fn emit(s: &Settings, text: &str) -> Result<()> {
    match s.get("output") {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {path}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn lines(v: &[String]) -> String {
    let mut out = v.join("\n");
    out.push('\n');
    out
}

fn group(s: &Settings) -> Result<GroupKind> {
    Ok(s.require("group")?.parse()?)
}

fn cocycle(s: &Settings) -> Result<CocycleData> {
    let kind = group(s)?;
    let field: Field = s.require("field")?.parse()?;
    let sigma = match s.get("sigma").unwrap_or("trivial") {
        "trivial" => Sigma::Trivial,
        "frobenius" => Sigma::Frobenius {
            weights: Vec::new(),
        },
        other => bail!("--sigma {other:?}: expected trivial or frobenius"),
    };
    match s.get("rho") {
        None | Some("trivial") => {}
        Some(other) => bail!(
            "--rho {other:?}: only trivial is accepted; give ρ overrides in a presentation file"
        ),
    }
    Ok(CocycleData::trivial(GroupSpec::new(kind), field).with_sigma(sigma)?)
}

fn scheme(s: &Settings, spec: &GroupSpec) -> Result<FolnerScheme> {
    let kind = match s.get("scheme") {
        None => return Ok(FolnerScheme::standard(spec.clone())),
        Some("boxes") => SchemeKind::Boxes,
        Some("box-times-z2") => SchemeKind::BoxTimesZ2,
        Some("word-balls") => SchemeKind::WordBalls,
        Some(other) => bail!("--scheme {other:?}: expected boxes, box-times-z2 or word-balls"),
    };
    Ok(FolnerScheme::new(spec.clone(), kind)?)
}

fn read_presentation(path: &str) -> Result<SubshiftPresentation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    SubshiftPresentation::parse(&text).with_context(|| path.to_string())
}

fn module(s: &Settings) -> Result<SubshiftPresentation> {
    match (s.get("presentation"), s.get("gen")) {
        (Some(_), Some(_)) => bail!("give either --presentation or --gen, not both"),
        (Some(path), None) => {
            let p = read_presentation(path)?;
            if let Some(g) = s.get("group") {
                let g: GroupKind = g.parse()?;
                if g != p.group().kind() {
                    bail!("--group {g} disagrees with {path} ({})", p.group().kind());
                }
            }
            if let Some(f) = s.get("field") {
                let f: Field = f.parse()?;
                if &f != p.field() {
                    bail!("--field {f} disagrees with {path} ({})", p.field());
                }
            }
            Ok(p)
        }
        (None, Some(gens)) => {
            let c = cocycle(s)?;
            let rank = s.usize_in("rank", 1, 1, 64)?;
            let gens = parse_generator_list(gens, c.field(), c.group().kind()).context("--gen")?;
            Ok(SubshiftPresentation::new(c, rank, gens)?)
        }
        (None, None) => bail!("missing --gen or --presentation"),
    }
}

fn submodule(s: &Settings, m: &SubshiftPresentation) -> Result<SubshiftPresentation> {
    match (s.get("sub-presentation"), s.get("sub-gen")) {
        (Some(_), Some(_)) => bail!("give either --sub-presentation or --sub-gen, not both"),
        (Some(path), None) => read_presentation(path),
        (None, Some(gens)) => {
            let gens =
                parse_generator_list(gens, m.field(), m.group().kind()).context("--sub-gen")?;
            Ok(SubshiftPresentation::new(
                m.cocycle().clone(),
                m.rank(),
                gens,
            )?)
        }
        (None, None) => bail!("missing --sub-gen or --sub-presentation"),
    }
}

fn approx(s: &Settings) -> Result<StabilizationConfig> {
    let a = StabilizationConfig {
        stability_window: s.usize_in("stability-window", 3, 1, 64)?,
        max_steps: s.usize_in("max-steps", 16, 1, 256)?,
    };
    a.validate()?;
    Ok(a)
}

fn nmax(s: &Settings, default: usize) -> Result<usize> {
    s.usize_in("nmax", default, 1, MAX_NMAX)
}

fn entropy(s: &Settings) -> Result<Outcome> {
    let p = module(s)?;
    let sch = scheme(s, p.group())?;
    let n_max = nmax(s, 10)?;
    let mut est = estimate(&p, &sch, n_max)?;
    let mut summary = vec![format!("estimate={}", rational::format(&est.estimate))];
    if let Some(tiles) = s.index_list("tiles")? {
        let config = BoundConfig {
            eps: s.rational("eps")?.unwrap_or_else(|| rational::ratio(1, 10)),
            tile_indices: tiles,
            n_from: s.usize_in("n-from", 1, 0, MAX_NMAX)?,
            n_check: s.usize_in("n-check", n_max, 0, MAX_NMAX)?,
        };
        let bound = certified_upper_bound(&p, &sch, &config)?;
        est.certified_upper = Some(bound.bound.clone());
        summary.extend(
            bound
                .to_lines()
                .into_iter()
                .map(|l| format!("certified_{l}")),
        );
    }
    emit(s, &est.to_csv())?;
    eprint!("{}", lines(&summary));
    Ok(Outcome::Success)
}

fn quotient_entropy(s: &Settings) -> Result<Outcome> {
    let m = module(s)?;
    let n = submodule(s, &m)?;
    let sch = scheme(s, m.group())?;
    let est = estimate_quotient(&m, &n, &sch, nmax(s, 10)?, &approx(s)?)?;
    emit(s, &est.to_csv())?;
    let mut summary = vec![
        format!("estimate={}", rational::format(&est.estimate)),
        format!("all_stabilized={}", est.all_stabilized),
    ];
    if !est.all_stabilized {
        let open: Vec<String> = est
            .rows
            .iter()
            .filter(|r| !r.stabilized)
            .map(|r| r.n.to_string())
            .collect();
        summary.push(format!("upper_bound_only={}", open.join(",")));
    }
    eprint!("{}", lines(&summary));
    Ok(if est.all_stabilized {
        Outcome::Success
    } else {
        Outcome::BudgetExhausted
    })
}

fn addition(s: &Settings) -> Result<Outcome> {
    let m = module(s)?;
    let n = submodule(s, &m)?;
    let sch = scheme(s, m.group())?;
    let tol = s.rational("tol")?.unwrap_or_else(|| rational::ratio(1, 20));
    let report = addition_check(&m, &n, &sch, nmax(s, 30)?, &tol, &approx(s)?)?;
    let mut csv = String::from(SesRow::CSV_HEADER);
    csv.push('\n');
    for r in &report.rows {
        csv.push_str(&r.to_csv());
        csv.push('\n');
    }
    emit(s, &csv)?;
    eprint!("{}", lines(&report.to_lines()));
    Ok(if !report.all_stabilized {
        Outcome::BudgetExhausted
    } else if report.passed() {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    })
}

fn zerodiv(s: &Settings) -> Result<Outcome> {
    let c = cocycle(s)?;
    let x =
        CrossedElement::parse(s.require("elem")?, c.field(), c.group().kind()).context("--elem")?;
    let sch = scheme(s, c.group())?;
    let radius = s.usize_in("radius", 6, 0, MAX_RADIUS)?;
    let report = zero_divisor_scan(&c, &x, &sch, nmax(s, 10)?, radius, &approx(s)?)?;
    emit(s, &lines(&report.to_lines(&c)))?;
    Ok(
        if report.submodule.all_stabilized && report.quotient.all_stabilized {
            Outcome::Success
        } else {
            Outcome::BudgetExhausted
        },
    )
}

fn tile(s: &Settings) -> Result<Outcome> {
    let spec = GroupSpec::new(group(s)?);
    let sch = scheme(s, &spec)?;
    let n: usize = s.usize_in("n", 0, 0, MAX_NMAX)?;
    let indices = s
        .index_list("tiles")?
        .ok_or_else(|| anyhow!("missing --tiles"))?;
    let eps = s.rational("eps")?.unwrap_or_else(|| rational::ratio(1, 10));
    let a = sch.set(n);
    let tiles: Vec<_> = indices.iter().map(|&i| sch.set(i)).collect();
    let tiling = match greedy_quasi_tile(&a, &tiles, &eps) {
        Ok(t) => t,
        Err(Error::Tiling(reason)) => {
            emit(
                s,
                &lines(&["result=fail".to_string(), format!("reason={reason}")]),
            )?;
            return Ok(Outcome::CheckFailed);
        }
        Err(e) => return Err(e.into()),
    };
    let report = check_quasi_tiling(&a, &tiling);
    let mut out = vec![format!(
        "result={}",
        if report.passed() { "pass" } else { "fail" }
    )];
    for c in &report.conditions {
        out.push(format!(
            "{}={}",
            c.name,
            if c.pass { "pass" } else { "fail" }
        ));
        out.push(format!("{}_ratio={}", c.name, rational::format(&c.ratio)));
    }
    for (i, centers) in tiling.centers.iter().enumerate() {
        let cs: Vec<String> = centers.iter().map(|g| g.to_string()).collect();
        out.push(format!("centers_{}={}", indices[i], cs.join(" ")));
    }
    emit(s, &lines(&out))?;
    Ok(if report.passed() {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    })
}

fn folner_ratios(s: &Settings) -> Result<Outcome> {
    let spec = GroupSpec::new(group(s)?);
    let sch = scheme(s, &spec)?;
    let n_max = nmax(s, 10)?;
    let c = sch.set(s.usize_in("c-index", 1, 0, MAX_NMAX)?);
    let mut csv = String::from(BoundaryRow::CSV_HEADER);
    csv.push('\n');
    for n in 1..=n_max {
        csv.push_str(&sch.boundary_row(&c, n).to_csv());
        csv.push('\n');
    }
    emit(s, &csv)?;
    let exhaustion = sch.verify_exhaustion(n_max);
    eprintln!("exhaustion={exhaustion}");
    Ok(Outcome::Success)
}

fn validate_cocycle(s: &Settings) -> Result<Outcome> {
    let c = match s.get("presentation") {
        Some(path) => read_presentation(path)?.cocycle().clone(),
        None => cocycle(s)?,
    };
    let budget = s.usize_in("budget", 100_000, 1, usize::MAX)?;
    let report = c.validate(budget, s.seed()?);
    emit(s, &lines(&report.to_lines()))?;
    Ok(if report.passed() {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    })
}
