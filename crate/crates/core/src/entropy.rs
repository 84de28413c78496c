//! Entropy estimates `dim T_{F_n} / |F_n|` along a Følner scheme, certified
//! upper bounds from quasi-tilings, additivity checks and zero-divisor scans.

use num_traits::Zero;
use rayon::prelude::*;

use crate::crossed::{CocycleData, CrossedElement};
use crate::error::{Error, Result};
use crate::folner::FolnerScheme;
use crate::groups::FiniteSubset;
use crate::linalg::sum_intersection_dims;
use crate::rational::{self, Rational};
use crate::shift::{trajectory_dim_quotient, StabilizationConfig, SubshiftPresentation};
use crate::tiling::{greedy_quasi_tile, ow_upper_bound};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRow {
    pub n: usize,
    pub folner_size: usize,
    pub dim: usize,
    pub ratio: Rational,
    pub stabilized: bool,
}

impl RatioRow {
    pub const CSV_HEADER: &'static str = "n,folner_size,trajectory_dim,ratio";

    fn new(n: usize, folner_size: usize, dim: usize, stabilized: bool) -> Self {
        RatioRow {
            n,
            folner_size,
            dim,
            ratio: rational::ratio(dim, folner_size),
            stabilized,
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{}",
            self.n,
            self.folner_size,
            self.dim,
            rational::format(&self.ratio)
        )
    }
}

/// The observed ratios; `estimate` is the last one, never an extrapolation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyEstimate {
    pub rows: Vec<RatioRow>,
    pub estimate: Rational,
    pub certified_upper: Option<Rational>,
    pub all_stabilized: bool,
}

impl EntropyEstimate {
    fn from_rows(rows: Vec<RatioRow>) -> Self {
        let estimate = rows
            .last()
            .map(|r| r.ratio.clone())
            .unwrap_or_else(Rational::zero);
        let all_stabilized = rows.iter().all(|r| r.stabilized);
        EntropyEstimate {
            rows,
            estimate,
            certified_upper: None,
            all_stabilized,
        }
    }

    pub fn ratio_at(&self, n: usize) -> Option<&Rational> {
        self.rows.iter().find(|r| r.n == n).map(|r| &r.ratio)
    }

    /// CSV with header, `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(RatioRow::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.to_csv());
            out.push('\n');
        }
        out
    }
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::param("n_max must be at least 1"));
    }
    Ok(())
}

fn check_scheme(p: &SubshiftPresentation, scheme: &FolnerScheme) -> Result<()> {
    if p.group().kind() != scheme.spec().kind() {
        return Err(Error::GroupMismatch(p.group().kind(), scheme.spec().kind()));
    }
    Ok(())
}

/// Ratios `dim T_{F_n} / |F_n|` for `n = 1..=n_max`. Windows are evaluated
/// in parallel; rows come back in index order.
pub fn estimate(
    p: &SubshiftPresentation,
    scheme: &FolnerScheme,
    n_max: usize,
) -> Result<EntropyEstimate> {
    check_n_max(n_max)?;
    check_scheme(p, scheme)?;
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let f = scheme.set(n);
            let dim = p.trajectory_dim(&f)?;
            Ok(RatioRow::new(n, f.len(), dim, true))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyEstimate::from_rows(rows))
}

/// Ratios of `dim (T_{F_n} + N) / N`. Rows whose intersection did not
/// stabilize hold upper bounds and are flagged.
pub fn estimate_quotient(
    module: &SubshiftPresentation,
    sub: &SubshiftPresentation,
    scheme: &FolnerScheme,
    n_max: usize,
    approx: &StabilizationConfig,
) -> Result<EntropyEstimate> {
    check_n_max(n_max)?;
    check_scheme(module, scheme)?;
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let f = scheme.set(n);
            let q = trajectory_dim_quotient(module, sub, &f, approx)?;
            Ok(RatioRow::new(n, f.len(), q.dim, q.stabilized))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyEstimate::from_rows(rows))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundConfig {
    pub eps: Rational,
    /// Tiles are `F_{n_i}` for these indices.
    pub tile_indices: Vec<usize>,
    /// Tilings are checked on `F_n` for `n_from <= n <= n_check`.
    pub n_from: usize,
    pub n_check: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedBound {
    pub bound: Rational,
    /// `M = dim T_{{e}}`.
    pub m: usize,
    pub eps: Rational,
    pub tile_indices: Vec<usize>,
    pub tile_ratios: Vec<Rational>,
    /// The tiling hypothesis holds on this range only; beyond it the bound
    /// is conditional.
    pub verified: (usize, usize),
}

impl CertifiedBound {
    pub fn to_lines(&self) -> Vec<String> {
        let ratios: Vec<String> = self.tile_ratios.iter().map(rational::format).collect();
        let tiles: Vec<String> = self.tile_indices.iter().map(|i| i.to_string()).collect();
        vec![
            format!("bound={}", rational::format(&self.bound)),
            format!("m={}", self.m),
            format!("eps={}", rational::format(&self.eps)),
            format!("tiles={}", tiles.join(",")),
            format!("tile_ratios={}", ratios.join(",")),
            format!("verified_from={}", self.verified.0),
            format!("verified_up_to={}", self.verified.1),
        ]
    }
}

/// `Mε + max_i(dim T_{F_{n_i}} / |F_{n_i}|) / (1 − ε)`, after checking that
/// the greedy tiler ε-quasi-tiles every `F_n` in the configured range by
/// the tiles `F_{n_i}`.
pub fn certified_upper_bound(
    p: &SubshiftPresentation,
    scheme: &FolnerScheme,
    config: &BoundConfig,
) -> Result<CertifiedBound> {
    check_scheme(p, scheme)?;
    certified_upper_bound_for(|f| p.trajectory_dim(f), scheme, config)
}

/// Same as [`certified_upper_bound`] for any per-window dimension function
/// `f`; `f` must be monotone, sub-additive and equivariant for the bound to
/// mean anything.
pub fn certified_upper_bound_for(
    f: impl Fn(&FiniteSubset) -> Result<usize>,
    scheme: &FolnerScheme,
    config: &BoundConfig,
) -> Result<CertifiedBound> {
    let eps = &config.eps;
    if eps <= &Rational::zero() || eps >= &rational::ratio(1, 4) {
        return Err(Error::param(format!(
            "ε must lie in (0, 1/4), got {}",
            rational::format(eps)
        )));
    }
    if config.tile_indices.is_empty() {
        return Err(Error::param("no tiles given"));
    }
    if config.n_from > config.n_check {
        return Err(Error::param("n_from exceeds n_check"));
    }
    let tiles: Vec<FiniteSubset> = config.tile_indices.iter().map(|&i| scheme.set(i)).collect();
    (config.n_from..=config.n_check)
        .into_par_iter()
        .try_for_each(|n| {
            greedy_quasi_tile(&scheme.set(n), &tiles, eps)
                .map(|_| ())
                .map_err(|e| Error::Tiling(format!("F_{n}: {e}")))
        })?;
    let tile_ratios = tiles
        .iter()
        .map(|t| Ok(rational::ratio(f(t)?, t.len())))
        .collect::<Result<Vec<_>>>()?;
    let e = FiniteSubset::singleton(scheme.spec().identity());
    let m = f(&e)?;
    let bound = ow_upper_bound(&rational::from_usize(m), eps, &tile_ratios)?;
    Ok(CertifiedBound {
        bound,
        m,
        eps: eps.clone(),
        tile_indices: config.tile_indices.clone(),
        tile_ratios,
        verified: (config.n_from, config.n_check),
    })
}

/// One window of the additivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesRow {
    pub n: usize,
    pub folner_size: usize,
    pub dim_t: usize,
    pub dim_t_cap_n: usize,
    pub dim_image: usize,
    /// `dim T_F(N)` for the submodule's own generators.
    pub dim_sub: usize,
    pub stabilized: bool,
    /// `dim T_F(M) ≥ dim T_F(N) + dim image`, evaluated only when
    /// `T_F(N) ⊆ T_F(M)`.
    pub inequality: Option<bool>,
}

impl SesRow {
    pub const CSV_HEADER: &'static str =
        "n,folner_size,dim_t,dim_t_cap_n,dim_image,dim_sub,exact,stabilized";

    pub fn is_exact(&self) -> bool {
        self.dim_t == self.dim_t_cap_n + self.dim_image
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.folner_size,
            self.dim_t,
            self.dim_t_cap_n,
            self.dim_image,
            self.dim_sub,
            self.is_exact(),
            self.stabilized
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditionReport {
    pub rows: Vec<SesRow>,
    pub e_m: Rational,
    pub e_n: Rational,
    pub e_q: Rational,
    /// `e_M − (e_N + e_Q)` at `n_max`.
    pub discrepancy: Rational,
    pub tol: Rational,
    pub all_stabilized: bool,
}

impl AdditionReport {
    pub fn ses_exact(&self) -> bool {
        self.rows.iter().all(SesRow::is_exact)
    }

    pub fn inequality_holds(&self) -> bool {
        self.rows.iter().all(|r| r.inequality != Some(false))
    }

    pub fn passed(&self) -> bool {
        num_traits::Signed::abs(&self.discrepancy) <= self.tol
            && self.ses_exact()
            && self.inequality_holds()
    }

    pub fn to_lines(&self) -> Vec<String> {
        vec![
            format!("result={}", if self.passed() { "pass" } else { "fail" }),
            format!("e_m={}", rational::format(&self.e_m)),
            format!("e_n={}", rational::format(&self.e_n)),
            format!("e_q={}", rational::format(&self.e_q)),
            format!("discrepancy={}", rational::format(&self.discrepancy)),
            format!("tol={}", rational::format(&self.tol)),
            format!("ses_exact={}", self.ses_exact()),
            format!("inequality={}", self.inequality_holds()),
            format!("all_stabilized={}", self.all_stabilized),
        ]
    }
}

/// Compares `e_M` with `e_N + e_{M/N}` at `n_max` and checks the short
/// exact sequence `0 → T_F ∩ N → T_F → (T_F + N)/N → 0` on every window.
pub fn addition_check(
    module: &SubshiftPresentation,
    sub: &SubshiftPresentation,
    scheme: &FolnerScheme,
    n_max: usize,
    tol: &Rational,
    approx: &StabilizationConfig,
) -> Result<AdditionReport> {
    check_n_max(n_max)?;
    check_scheme(module, scheme)?;
    if tol < &Rational::zero() {
        return Err(Error::param("tolerance must be nonnegative"));
    }
    let field = module.field();
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let f = scheme.set(n);
            let q = trajectory_dim_quotient(module, sub, &f, approx)?;
            let tm = module.translates(&f);
            let tn = sub.translates(&f);
            let both = sum_intersection_dims(field, &tm, &tn)?;
            let inequality =
                (both.dim_sum == both.dim_u).then(|| q.trajectory_dim >= both.dim_w + q.image_dim);
            Ok(SesRow {
                n,
                folner_size: f.len(),
                dim_t: q.trajectory_dim,
                dim_t_cap_n: q.intersection_dim,
                dim_image: q.image_dim,
                dim_sub: both.dim_w,
                stabilized: q.stabilized,
                inequality,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let last = rows.last().expect("n_max >= 1");
    let size = last.folner_size;
    let e_m = rational::ratio(last.dim_t, size);
    let e_n = rational::ratio(last.dim_sub, size);
    let e_q = rational::ratio(last.dim_t - last.dim_t_cap_n, size);
    let discrepancy = &e_m - (&e_n + &e_q);
    let all_stabilized = rows.iter().all(|r| r.stabilized);
    Ok(AdditionReport {
        rows,
        e_m,
        e_n,
        e_q,
        discrepancy,
        tol: tol.clone(),
        all_stabilized,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ZeroDivisor,
    NoEvidence,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::ZeroDivisor => "zero-divisor",
            Verdict::NoEvidence => "no-evidence",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisorReport {
    pub verdict: Verdict,
    /// Nonzero `y` with `y·x = 0`.
    pub witness: Option<CrossedElement>,
    pub submodule: EntropyEstimate,
    pub quotient: EntropyEstimate,
    pub integrality_gap: Rational,
    pub radius: usize,
}

impl ZeroDivisorReport {
    pub fn to_lines(&self, cocycle: &CocycleData) -> Vec<String> {
        let mut out = vec![format!("verdict={}", self.verdict)];
        if let Some(w) = &self.witness {
            out.push(format!("witness={}", w.format(cocycle.field())));
        }
        out.push(format!("radius={}", self.radius));
        out.push(format!(
            "submodule_estimate={}",
            rational::format(&self.submodule.estimate)
        ));
        out.push(format!(
            "quotient_estimate={}",
            rational::format(&self.quotient.estimate)
        ));
        out.push(format!(
            "integrality_gap={}",
            rational::format(&self.integrality_gap)
        ));
        out.push(format!(
            "all_stabilized={}",
            self.submodule.all_stabilized && self.quotient.all_stabilized
        ));
        out
    }
}

/// Entropy of `K*G·x` and of `K*G / K*G·x`, plus an annihilator search on
/// `B_radius`. Only a verified witness yields [`Verdict::ZeroDivisor`]; a
/// fractional ratio is reported as evidence alongside it.
pub fn zero_divisor_scan(
    cocycle: &CocycleData,
    x: &CrossedElement,
    scheme: &FolnerScheme,
    n_max: usize,
    radius: usize,
    approx: &StabilizationConfig,
) -> Result<ZeroDivisorReport> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ambient = SubshiftPresentation::bernoulli(cocycle.clone(), 1)?;
    let ideal = SubshiftPresentation::cyclic(cocycle.clone(), x)?;
    let submodule = estimate(&ideal, scheme, n_max)?;
    let quotient = estimate_quotient(&ambient, &ideal, scheme, n_max, approx)?;
    let witness = cocycle.find_annihilator(x, radius)?;
    if let Some(y) = &witness {
        debug_assert!(cocycle.multiply(y, x)?.is_zero());
    }
    Ok(ZeroDivisorReport {
        verdict: if witness.is_some() {
            Verdict::ZeroDivisor
        } else {
            Verdict::NoEvidence
        },
        witness,
        integrality_gap: integrality_report(&submodule),
        submodule,
        quotient,
        radius,
    })
}

/// Distance from the estimate to the nearest natural number.
pub fn integrality_report(e: &EntropyEstimate) -> Rational {
    rational::distance_to_natural(&e.estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupKind, GroupSpec};
    use crate::rational::ratio;
    use crate::tiling::{build_net, net_density};

    fn ring(kind: GroupKind, field: &str) -> CocycleData {
        CocycleData::trivial(GroupSpec::new(kind), field.parse().unwrap())
    }

    fn elem(c: &CocycleData, s: &str) -> CrossedElement {
        CrossedElement::parse(s, c.field(), c.group().kind()).unwrap()
    }

    fn scheme(c: &CocycleData) -> FolnerScheme {
        FolnerScheme::standard(c.group().clone())
    }

    #[test]
    fn bernoulli_and_zero() {
        let c = ring(GroupKind::FreeAbelian(1), "gf2");
        let p = SubshiftPresentation::bernoulli(c.clone(), 3).unwrap();
        let e = estimate(&p, &scheme(&c), 8).unwrap();
        assert!(e
            .rows
            .iter()
            .all(|r| r.ratio == ratio(3, 1) && r.dim == 3 * r.folner_size));
        assert_eq!(e.estimate, ratio(3, 1));
        assert!(e
            .to_csv()
            .starts_with("n,folner_size,trajectory_dim,ratio\n1,3,9,3/1\n"));
        let z = SubshiftPresentation::zero(c.clone(), 1).unwrap();
        assert!(estimate(&z, &scheme(&c), 5)
            .unwrap()
            .rows
            .iter()
            .all(|r| r.ratio.is_zero()));
        assert!(estimate(&p, &scheme(&c), 0).is_err());
    }

    #[test]
    fn fractional_entropy() {
        let c = ring(GroupKind::ZCrossZ2, "gf3");
        let x = elem(&c, "1*(0,0) + 1*(0,1)");
        let p = SubshiftPresentation::cyclic(c.clone(), &x).unwrap();
        let e = estimate(&p, &scheme(&c), 6).unwrap();
        assert!(e.rows.iter().all(|r| r.ratio == ratio(1, 2)));
        assert_eq!(integrality_report(&e), ratio(1, 2));
        let m = SubshiftPresentation::bernoulli(c.clone(), 1).unwrap();
        let q = estimate_quotient(&m, &p, &scheme(&c), 6, &StabilizationConfig::default()).unwrap();
        assert!(q.rows.iter().all(|r| r.ratio == ratio(1, 2)));
        assert!(q.all_stabilized);
    }

    #[test]
    fn quotient_of_zero_is_module() {
        let c = ring(GroupKind::FreeAbelian(2), "gf2");
        let m = SubshiftPresentation::new(
            c.clone(),
            1,
            vec![elem(&c, "1*(0,0) + 1*(1,0) + 1*(0,1)").to_vector(1)],
        )
        .unwrap();
        let zero = SubshiftPresentation::zero(c.clone(), 1).unwrap();
        let approx = StabilizationConfig::default();
        let a = estimate(&m, &scheme(&c), 4).unwrap();
        let b = estimate_quotient(&m, &zero, &scheme(&c), 4, &approx).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn certified_bound() {
        let c = ring(GroupKind::FreeAbelian(1), "gf2");
        let p = SubshiftPresentation::bernoulli(c.clone(), 1).unwrap();
        let cfg = BoundConfig {
            eps: ratio(1, 10),
            tile_indices: vec![5],
            n_from: 50,
            n_check: 60,
        };
        let b = certified_upper_bound(&p, &scheme(&c), &cfg).unwrap();
        assert_eq!(b.bound, ratio(109, 90));
        assert_eq!(b.m, 1);
        let tight = BoundConfig {
            eps: ratio(1, 100),
            tile_indices: vec![5, 0],
            n_from: 5,
            n_check: 30,
        };
        let b = certified_upper_bound(&p, &scheme(&c), &tight).unwrap();
        assert_eq!(b.bound, ratio(1, 100) + ratio(100, 99));
        // F_5 alone leaves too much of F_6 uncovered
        let bad = BoundConfig {
            n_from: 6,
            ..cfg.clone()
        };
        assert!(matches!(
            certified_upper_bound(&p, &scheme(&c), &bad),
            Err(Error::Tiling(_))
        ));
        let quarter = BoundConfig {
            eps: ratio(1, 4),
            ..cfg
        };
        assert!(certified_upper_bound(&p, &scheme(&c), &quarter).is_err());
    }

    #[test]
    fn addition_on_small_cases() {
        let c = ring(GroupKind::FreeAbelian(1), "gf3");
        let m = SubshiftPresentation::bernoulli(c.clone(), 1).unwrap();
        let n = SubshiftPresentation::cyclic(c.clone(), &elem(&c, "2*(0) + 1*(1)")).unwrap();
        let approx = StabilizationConfig::default();
        let r = addition_check(&m, &n, &scheme(&c), 10, &ratio(1, 20), &approx).unwrap();
        assert!(r.passed(), "{:?}", r.to_lines());
        assert_eq!(r.e_q, ratio(1, 21));
        assert_eq!(r.discrepancy, -ratio(1, 21));
        // translates of t - 1 leave F_n, so the window inequality is not applicable
        assert!(r.rows.iter().all(|row| row.inequality.is_none()));
        let same = addition_check(&m, &m, &scheme(&c), 5, &ratio(0, 1), &approx).unwrap();
        assert!(same.passed());
        assert!(same.rows.iter().all(|row| row.inequality == Some(true)));
        let strict = addition_check(&m, &n, &scheme(&c), 10, &ratio(1, 30), &approx).unwrap();
        assert!(!strict.passed());
    }

    #[test]
    fn zero_divisor_verdicts() {
        let approx = StabilizationConfig::default();
        let c = ring(GroupKind::ZCrossZ2, "gf3");
        let x = elem(&c, "1*(0,0) + 1*(0,1)");
        let r = zero_divisor_scan(&c, &x, &scheme(&c), 4, 2, &approx).unwrap();
        assert_eq!(r.verdict, Verdict::ZeroDivisor);
        assert_eq!(
            r.witness.as_ref().unwrap().format(c.field()),
            "1*(0,0) + 2*(0,1)"
        );
        assert_eq!(r.integrality_gap, ratio(1, 2));
        assert!(r.to_lines(&c).contains(&"verdict=zero-divisor".to_string()));

        let c = ring(GroupKind::FreeAbelian(1), "gf3");
        let r =
            zero_divisor_scan(&c, &elem(&c, "2*(0) + 1*(1)"), &scheme(&c), 5, 4, &approx).unwrap();
        assert_eq!(r.verdict, Verdict::NoEvidence);
        assert!(r.submodule.rows.iter().all(|row| row.ratio == ratio(1, 1)));

        let c = ring(GroupKind::FreeAbelian(1), "gf4");
        let unit = elem(&c, "w*(0)");
        let r = zero_divisor_scan(&c, &unit, &scheme(&c), 5, 2, &approx).unwrap();
        assert_eq!(r.verdict, Verdict::NoEvidence);
        assert!(r.quotient.rows.iter().all(|row| row.ratio.is_zero()));
        assert!(
            zero_divisor_scan(&c, &CrossedElement::zero(), &scheme(&c), 5, 2, &approx).is_err()
        );
    }

    #[test]
    fn integrality_examples() {
        let mk = |r: Rational| {
            EntropyEstimate::from_rows(vec![RatioRow {
                n: 1,
                folner_size: 1,
                dim: 0,
                ratio: r,
                stabilized: true,
            }])
        };
        assert_eq!(integrality_report(&mk(ratio(3, 1))), ratio(0, 1));
        assert_eq!(integrality_report(&mk(ratio(1, 2))), ratio(1, 2));
        assert_eq!(integrality_report(&mk(ratio(40, 41))), ratio(1, 41));
    }

    #[test]
    fn net_density_lower_bound() {
        for (kind, field, gens) in [
            (GroupKind::FreeAbelian(1), "gf2", "1*(0) + 1*(2)"),
            (GroupKind::ZCrossZ2, "gf3", "1*(0,0) + 1*(0,1)"),
            (GroupKind::FreeAbelian(2), "gf3", "1*(0,0) + 2*(1,1)"),
        ] {
            let c = ring(kind, field);
            let p = SubshiftPresentation::cyclic(c.clone(), &elem(&c, gens)).unwrap();
            let sch = scheme(&c);
            let mut e = p.support();
            e = e.union(&FiniteSubset::singleton(c.group().identity()));
            let f = e.product(&e.inverse());
            let n_max = 6;
            let net = build_net(&e, &f, &sch.set(n_max)).unwrap();
            for n in 1..=n_max {
                let density = net_density(&net, &sch, n).unwrap();
                let r = ratio(p.trajectory_dim(&sch.set(n)).unwrap(), sch.set(n).len());
                assert!(
                    r >= density * rational::from_usize(p.base_dim()),
                    "{kind} n={n}"
                );
            }
        }
    }
}
