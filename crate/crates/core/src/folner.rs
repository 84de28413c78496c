//! `C`-interior, `C`-exterior and `C`-boundary of finite sets, and the
//! Følner schemes used to exhaust each group.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groups::{FiniteSubset, GroupElement, GroupKind, GroupSpec};
use crate::rational::{self, Rational};

/// `In_C(A) = {x : xC ⊆ A}`.
pub fn interior(a: &FiniteSubset, c: &FiniteSubset) -> FiniteSubset {
    let Some(c0) = c.first() else {
        // every x satisfies x∅ ⊆ A; only meaningful for nonempty C
        return FiniteSubset::empty();
    };
    let c0_inv = c0.inverse();
    FiniteSubset::from_iter(
        a.iter()
            .map(|y| y.mul(&c0_inv))
            .filter(|x| c.iter().all(|ci| a.contains(&x.mul(ci)))),
    )
}

/// `Out_C(A) = {x : xC ∩ A ≠ ∅} = A C^{-1}`.
pub fn exterior(a: &FiniteSubset, c: &FiniteSubset) -> FiniteSubset {
    a.product(&c.inverse())
}

/// `∂_C(A) = Out_C(A) \ In_C(A)`.
pub fn boundary(a: &FiniteSubset, c: &FiniteSubset) -> FiniteSubset {
    exterior(a, c).difference(&interior(a, c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    /// `[-n, n]^d` in `Z^d`.
    Boxes,
    /// `[-n, n] x {0, 1}` in `Z x Z/2`.
    BoxTimesZ2,
    /// Word balls `B_n(S)`.
    WordBalls,
    /// Explicit list of sets; indices past the end repeat the last set.
    Explicit(Vec<FiniteSubset>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerScheme {
    spec: GroupSpec,
    kind: SchemeKind,
}

impl FolnerScheme {
    pub fn new(spec: GroupSpec, kind: SchemeKind) -> Result<Self> {
        match (&kind, spec.kind()) {
            (SchemeKind::Boxes, GroupKind::FreeAbelian(_))
            | (SchemeKind::BoxTimesZ2, GroupKind::ZCrossZ2)
            | (SchemeKind::WordBalls, _) => {}
            (SchemeKind::Explicit(sets), k) => {
                if sets.is_empty() {
                    return Err(Error::param("explicit scheme needs at least one set"));
                }
                for s in sets {
                    for g in s.iter() {
                        if g.kind() != k {
                            return Err(Error::GroupMismatch(k, g.kind()));
                        }
                    }
                }
            }
            (kind, group) => {
                return Err(Error::param(format!(
                    "scheme {kind:?} is not defined on {group}"
                )))
            }
        }
        Ok(FolnerScheme { spec, kind })
    }

    /// Boxes on `Z^d`, `[-n,n] x Z/2` on `Z x Z/2`, word balls otherwise.
    pub fn standard(spec: GroupSpec) -> Self {
        let kind = match spec.kind() {
            GroupKind::FreeAbelian(_) => SchemeKind::Boxes,
            GroupKind::ZCrossZ2 => SchemeKind::BoxTimesZ2,
            GroupKind::Heisenberg => SchemeKind::WordBalls,
        };
        FolnerScheme { spec, kind }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn kind(&self) -> &SchemeKind {
        &self.kind
    }

    /// `F_n`.
    pub fn set(&self, n: usize) -> FiniteSubset {
        let r = n as i64;
        match &self.kind {
            SchemeKind::Boxes => {
                let GroupKind::FreeAbelian(d) = self.spec.kind() else {
                    unreachable!("checked in constructor")
                };
                let mut points: Vec<Vec<i64>> = vec![vec![]];
                for _ in 0..d {
                    points = points
                        .into_iter()
                        .flat_map(|p| {
                            (-r..=r).map(move |x| {
                                let mut q = p.clone();
                                q.push(x);
                                q
                            })
                        })
                        .collect();
                }
                FiniteSubset::from_iter(points.iter().map(|p| crate::groups::zd(p)))
            }
            SchemeKind::BoxTimesZ2 => FiniteSubset::from_iter(
                (-r..=r).flat_map(|k| [0u8, 1].map(|t| GroupElement::ZCrossZ2 { n: k, t })),
            ),
            SchemeKind::WordBalls => self.spec.ball(n),
            SchemeKind::Explicit(sets) => sets[n.min(sets.len() - 1)].clone(),
        }
    }

    /// `|∂_C(F_n)| / |F_n|`, exact.
    pub fn boundary_ratio(&self, c: &FiniteSubset, n: usize) -> Rational {
        let f = self.set(n);
        if f.is_empty() {
            return Rational::zero();
        }
        rational::ratio(boundary(&f, c).len(), f.len())
    }

    pub fn boundary_row(&self, c: &FiniteSubset, n: usize) -> BoundaryRow {
        let f = self.set(n);
        let b = boundary(&f, c).len();
        BoundaryRow {
            n,
            folner_size: f.len(),
            boundary_size: b,
            ratio: if f.is_empty() {
                Rational::zero()
            } else {
                rational::ratio(b, f.len())
            },
        }
    }

    /// Bounded check of the exhaustion axioms: `e ∈ F_0`, nesting up to
    /// `n_max`, and `B_r(S) ⊆ F_{n_max}` for every `r ≤ n_max`.
    pub fn verify_exhaustion(&self, n_max: usize) -> ExhaustionReport {
        let fail = |violation: String| ExhaustionReport {
            n_max,
            violation: Some(violation),
        };
        let mut prev = self.set(0);
        if !prev.contains(&self.spec.identity()) {
            return fail("e ∉ F_0".to_string());
        }
        for n in 1..=n_max {
            let next = self.set(n);
            if let Some(g) = prev.iter().find(|g| !next.contains(g)) {
                return fail(format!("F_{} ⊄ F_{n}: {g} missing", n - 1));
            }
            prev = next;
        }
        for (r, layer) in self.spec.ball_layers(n_max).iter().enumerate() {
            if let Some(g) = layer.iter().find(|g| !prev.contains(g)) {
                return fail(format!("ball({r}) ⊄ F_{n_max}: {g} missing"));
            }
        }
        ExhaustionReport {
            n_max,
            violation: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryRow {
    pub n: usize,
    pub folner_size: usize,
    pub boundary_size: usize,
    pub ratio: Rational,
}

impl BoundaryRow {
    pub const CSV_HEADER: &'static str = "n,folner_size,boundary_size,ratio";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{}",
            self.n,
            self.folner_size,
            self.boundary_size,
            rational::format(&self.ratio)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionReport {
    pub n_max: usize,
    pub violation: Option<String>,
}

impl ExhaustionReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ExhaustionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass (n_max={})", self.n_max),
            Some(v) => write!(f, "fail: {v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{heis, interval, z, zd};
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn zscheme(d: usize) -> FolnerScheme {
        FolnerScheme::standard(GroupSpec::new(GroupKind::FreeAbelian(d)))
    }

    /// Direct enumeration of the definitions over a bounding window.
    fn boundary_by_definition(
        a: &FiniteSubset,
        c: &FiniteSubset,
        window: &FiniteSubset,
    ) -> FiniteSubset {
        FiniteSubset::from_iter(
            window
                .iter()
                .filter(|x| {
                    let xc = c.translate(x);
                    let meets = xc.iter().any(|y| a.contains(y));
                    let inside = xc.iter().all(|y| a.contains(y));
                    meets && !inside
                })
                .cloned(),
        )
    }

    #[test]
    fn interval_example() {
        let a = interval(0, 10);
        let c = interval(-1, 1);
        assert_eq!(interior(&a, &c), interval(1, 9));
        assert_eq!(exterior(&a, &c), interval(-1, 11));
        assert_eq!(
            boundary(&a, &c),
            FiniteSubset::from_iter([z(-1), z(0), z(10), z(11)])
        );
        assert_eq!(
            boundary(&a, &c),
            boundary_by_definition(&a, &c, &interval(-20, 20))
        );
    }

    #[test]
    fn trivial_c() {
        let a = interval(-3, 5);
        let e = FiniteSubset::singleton(z(0));
        assert_eq!(interior(&a, &e), a);
        assert_eq!(exterior(&a, &e), a);
        assert!(boundary(&a, &e).is_empty());
    }

    #[test]
    fn square_boundary() {
        let s = zscheme(2);
        let a = s.set(3);
        let c = s.set(1);
        assert_eq!(boundary(&a, &c).len(), 81 - 25);
    }

    #[test]
    fn folner_sets() {
        assert_eq!(zscheme(1).set(10).len(), 21);
        let zz = FolnerScheme::standard(GroupSpec::new(GroupKind::ZCrossZ2));
        assert_eq!(zz.set(2).len(), 10);
        let h = FolnerScheme::standard(GroupSpec::new(GroupKind::Heisenberg));
        assert_eq!(h.set(1).len(), 5);
    }

    #[test]
    fn ratios() {
        let s = zscheme(1);
        assert_eq!(s.boundary_ratio(&interval(-1, 1), 10), ratio(4, 21));
        assert_eq!(
            s.boundary_ratio(&FiniteSubset::singleton(z(0)), 7),
            Rational::zero()
        );
        let s2 = zscheme(2);
        assert_eq!(s2.boundary_ratio(&s2.set(1), 40), ratio(8, 81));
        assert_eq!(s2.boundary_row(&s2.set(1), 2).to_csv(), "2,25,40,8/5");
    }

    #[test]
    fn box_ratios_decrease() {
        let s = zscheme(2);
        let c = s.set(1);
        let rs: Vec<_> = (1..12).map(|n| s.boundary_ratio(&c, n)).collect();
        assert!(rs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn exhaustion() {
        assert!(zscheme(1).verify_exhaustion(20).passed());
        assert!(zscheme(2).verify_exhaustion(8).passed());
        let h = FolnerScheme::standard(GroupSpec::new(GroupKind::Heisenberg));
        assert!(h.verify_exhaustion(6).passed());
        let bad = FolnerScheme::new(
            GroupSpec::new(GroupKind::FreeAbelian(1)),
            SchemeKind::Explicit(vec![FiniteSubset::empty(), interval(-1, 1)]),
        )
        .unwrap();
        let report = bad.verify_exhaustion(3);
        assert_eq!(report.violation.as_deref(), Some("e ∉ F_0"));
        let not_nested = FolnerScheme::new(
            GroupSpec::new(GroupKind::FreeAbelian(1)),
            SchemeKind::Explicit(vec![interval(0, 1), interval(1, 3)]),
        )
        .unwrap();
        assert!(!not_nested.verify_exhaustion(3).passed());
    }

    #[test]
    fn scheme_group_mismatch() {
        assert!(
            FolnerScheme::new(GroupSpec::new(GroupKind::Heisenberg), SchemeKind::Boxes).is_err()
        );
        assert!(FolnerScheme::new(
            GroupSpec::new(GroupKind::FreeAbelian(2)),
            SchemeKind::BoxTimesZ2
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn boundary_is_translation_invariant(a in -30i64..30, b in -30i64..30, c in -30i64..30, n in 1usize..4) {
            let h = FolnerScheme::standard(GroupSpec::new(GroupKind::Heisenberg));
            let f = h.set(n);
            let cset = h.set(1);
            let g = heis(a, b, c);
            prop_assert_eq!(boundary(&f.translate(&g), &cset).len(), boundary(&f, &cset).len());
        }

        #[test]
        fn interior_inside_exterior(pts in proptest::collection::vec((-6i64..6, -6i64..6), 1..30)) {
            let a = FiniteSubset::from_iter(pts.iter().map(|&(x, y)| zd(&[x, y])));
            let c = zscheme(2).set(1);
            let inn = interior(&a, &c);
            let out = exterior(&a, &c);
            prop_assert!(inn.is_subset(&a));
            prop_assert!(a.is_subset(&out));
            let window = zscheme(2).set(8);
            prop_assert_eq!(boundary(&a, &c), boundary_by_definition(&a, &c, &window));
        }
    }
}
