//! Crossed products `K*G`: finite formal sums `Σ r_g g` multiplied by
//! `(r g)(s h) = r s^σ(g) ρ(g,h) gh`.
//!
//! The automorphism map `σ` is a homomorphism `G → <Frobenius>` given by an
//! integer weight on each coordinate; `ρ` is `1` except at explicitly
//! overridden pairs.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{FiniteSubset, GroupElement, GroupKind, GroupSpec};
use crate::linalg::{ColumnIndex, Echelon, Field, Scalar, SparseVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sigma {
    Trivial,
    /// `σ(g) = Frobenius^(Σ weights[i] * coords(g)[i])`.
    Frobenius {
        weights: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleData {
    group: GroupSpec,
    field: Field,
    sigma: Sigma,
    rho: BTreeMap<(GroupElement, GroupElement), Scalar>,
}

impl CocycleData {
    /// Group algebra `K[G]`.
    pub fn trivial(group: GroupSpec, field: Field) -> Self {
        CocycleData {
            group,
            field,
            sigma: Sigma::Trivial,
            rho: BTreeMap::new(),
        }
    }

    /// Frobenius twist along the first coordinate, `ρ ≡ 1`.
    pub fn frobenius(group: GroupSpec, field: Field) -> Self {
        let mut weights = vec![0; group.kind().arity()];
        weights[0] = 1;
        CocycleData {
            group,
            field,
            sigma: Sigma::Frobenius { weights },
            rho: BTreeMap::new(),
        }
    }

    /// Empty Frobenius weights mean "first coordinate".
    pub fn with_sigma(mut self, mut sigma: Sigma) -> Result<Self> {
        if let Sigma::Frobenius { weights } = &mut sigma {
            if weights.is_empty() {
                weights.resize(self.group.kind().arity(), 0);
                weights[0] = 1;
            }
            if weights.len() != self.group.kind().arity() {
                return Err(Error::param(format!(
                    "σ needs {} weights for {}",
                    self.group.kind().arity(),
                    self.group.kind()
                )));
            }
        }
        self.sigma = sigma;
        Ok(self)
    }

    /// Overrides `ρ(g, h)`; the value must be a unit.
    pub fn with_rho(mut self, g: GroupElement, h: GroupElement, value: Scalar) -> Result<Self> {
        self.group.check(&g)?;
        self.group.check(&h)?;
        if !self.field.contains(&value) {
            return Err(Error::InvalidScalar(format!("{value:?}")));
        }
        if self.field.is_zero(&value) {
            return Err(Error::param("ρ takes unit values"));
        }
        if self.field.is_one(&value) {
            self.rho.remove(&(g, h));
        } else {
            self.rho.insert((g, h), value);
        }
        Ok(self)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn rho_overrides(
        &self,
    ) -> impl Iterator<Item = (&GroupElement, &GroupElement, &Scalar)> + '_ {
        self.rho.iter().map(|((g, h), c)| (g, h, c))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn sigma(&self) -> &Sigma {
        &self.sigma
    }

    pub fn is_trivial(&self) -> bool {
        self.rho.is_empty()
            && match &self.sigma {
                Sigma::Trivial => true,
                Sigma::Frobenius { .. } => self.field.automorphism_order() == 1,
            }
    }

    pub fn sigma_exponent(&self, g: &GroupElement) -> i64 {
        match &self.sigma {
            Sigma::Trivial => 0,
            Sigma::Frobenius { weights } => {
                let e: i64 = weights
                    .iter()
                    .zip(g.coords().iter())
                    .map(|(w, c)| w * c)
                    .sum();
                e.rem_euclid(self.field.automorphism_order())
            }
        }
    }

    /// `r^σ(g)`.
    pub fn apply_sigma(&self, g: &GroupElement, r: &Scalar) -> Scalar {
        self.field.frobenius(r, self.sigma_exponent(g))
    }

    pub fn rho(&self, g: &GroupElement, h: &GroupElement) -> Scalar {
        if self.rho.is_empty() {
            return self.field.one();
        }
        self.rho
            .get(&(g.clone(), h.clone()))
            .cloned()
            .unwrap_or_else(|| self.field.one())
    }

    fn check_element(&self, x: &CrossedElement) -> Result<()> {
        for (g, c) in x.terms() {
            self.group.check(g)?;
            if !self.field.contains(c) {
                return Err(Error::InvalidScalar(format!("{c:?} in {}", self.field)));
            }
        }
        Ok(())
    }

    pub fn one(&self) -> CrossedElement {
        CrossedElement::monomial(&self.field, self.field.one(), self.group.identity())
    }

    /// Bilinear extension of the twisted product rule.
    pub fn multiply(&self, x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.multiply_unchecked(x, y))
    }

    fn multiply_unchecked(&self, x: &CrossedElement, y: &CrossedElement) -> CrossedElement {
        let f = &self.field;
        let mut out = CrossedElement::zero();
        for (g, r) in x.terms() {
            for (h, s) in y.terms() {
                let c = f.mul(&f.mul(r, &self.apply_sigma(g, s)), &self.rho(g, h));
                out.add_term(f, g.mul(h), &c);
            }
        }
        out
    }

    /// Left multiplication by `g` on `(K*G)^r`: the coefficient `a` at
    /// `(h, j)` moves to `(gh, j)` as `σ_g(a) ρ(g, h)`.
    pub fn act(&self, g: &GroupElement, v: &SparseVector) -> SparseVector {
        let f = &self.field;
        SparseVector::from_entries(
            f,
            v.iter().map(|((h, j), a)| {
                (
                    (g.mul(h), *j),
                    f.mul(&self.apply_sigma(g, a), &self.rho(g, h)),
                )
            }),
        )
    }

    /// Sampled check of the cocycle conditions and of associativity on
    /// `ball(2)^3`, truncated to `sample_budget` triples.
    pub fn validate(&self, sample_budget: usize, seed: u64) -> CocycleReport {
        const RADIUS: usize = 2;
        let f = &self.field;
        let ball = self.group.ball(RADIUS).to_vec();
        let mut violations = Vec::new();
        let record = |v: Violation, violations: &mut Vec<Violation>| {
            if !violations
                .iter()
                .any(|x: &Violation| x.condition == v.condition)
            {
                violations.push(v);
            }
        };

        let e = self.group.identity();
        if self.sigma_exponent(&e) != 0 {
            record(
                Violation::new(CocycleCondition::Cross3, vec![e.clone()], "σ(e) ≠ 1"),
                &mut violations,
            );
        }
        for g in &ball {
            if !f.is_one(&self.rho(g, &e)) || !f.is_one(&self.rho(&e, g)) {
                record(
                    Violation::new(
                        CocycleCondition::Cross3,
                        vec![g.clone()],
                        "ρ(g,e) or ρ(e,g) ≠ 1",
                    ),
                    &mut violations,
                );
                break;
            }
        }

        let scalars: Vec<Scalar> = match f.elements() {
            Some(els) if els.len() <= 64 => els,
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..16).map(|_| f.random(&mut rng)).collect()
            }
        };
        'pairs: for g1 in &ball {
            for g2 in &ball {
                let rho = self.rho(g1, g2);
                let rho_inv = f.inv(&rho).expect("ρ is a unit");
                let g12 = g1.mul(g2);
                for r in &scalars {
                    let lhs = self.apply_sigma(g1, &self.apply_sigma(g2, r));
                    let rhs = f.mul(&f.mul(&rho, &self.apply_sigma(&g12, r)), &rho_inv);
                    if lhs != rhs {
                        record(
                            Violation::new(
                                CocycleCondition::Cross2,
                                vec![g1.clone(), g2.clone()],
                                format!("fails for r = {}", f.format(r)),
                            ),
                            &mut violations,
                        );
                        break 'pairs;
                    }
                }
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut triples = 0usize;
        let mut cross1_failed = false;
        let mut assoc_failed = false;
        'triples: for g1 in &ball {
            for g2 in &ball {
                for g3 in &ball {
                    if triples >= sample_budget {
                        break 'triples;
                    }
                    triples += 1;
                    let g12 = g1.mul(g2);
                    let g23 = g2.mul(g3);
                    if !cross1_failed {
                        let lhs = f.mul(&self.rho(g1, g2), &self.rho(&g12, g3));
                        let rhs = f.mul(
                            &self.apply_sigma(g1, &self.rho(g2, g3)),
                            &self.rho(g1, &g23),
                        );
                        if lhs != rhs {
                            cross1_failed = true;
                            record(
                                Violation::new(
                                    CocycleCondition::Cross1,
                                    vec![g1.clone(), g2.clone(), g3.clone()],
                                    "ρ(g1,g2)ρ(g1g2,g3) ≠ ρ(g2,g3)^σ(g1) ρ(g1,g2g3)",
                                ),
                                &mut violations,
                            );
                        }
                    }
                    if !assoc_failed {
                        let x = CrossedElement::monomial(f, f.random_nonzero(&mut rng), g1.clone());
                        let y = CrossedElement::monomial(f, f.random_nonzero(&mut rng), g2.clone());
                        let z = CrossedElement::monomial(f, f.random_nonzero(&mut rng), g3.clone());
                        if !self.associates(&x, &y, &z) {
                            assoc_failed = true;
                            record(
                                Violation::new(
                                    CocycleCondition::Associativity,
                                    vec![g1.clone(), g2.clone(), g3.clone()],
                                    "(xy)z ≠ x(yz) on monomials",
                                ),
                                &mut violations,
                            );
                        }
                    }
                }
            }
        }

        let small = self.group.ball(1).to_vec();
        let samples = 16usize.min(sample_budget);
        for _ in 0..samples {
            if assoc_failed {
                break;
            }
            let [x, y, z] = [0, 1, 2].map(|_| random_element(f, &small, &mut rng));
            if !self.associates(&x, &y, &z) {
                assoc_failed = true;
                record(
                    Violation::new(
                        CocycleCondition::Associativity,
                        Vec::new(),
                        format!(
                            "({x_}) ({y_}) ({z_})",
                            x_ = x.format(f),
                            y_ = y.format(f),
                            z_ = z.format(f)
                        ),
                    ),
                    &mut violations,
                );
            }
        }

        violations.sort_by_key(|v| v.condition);
        CocycleReport {
            radius: RADIUS,
            triples_checked: triples,
            element_samples: samples,
            violations,
        }
    }

    fn associates(&self, x: &CrossedElement, y: &CrossedElement, z: &CrossedElement) -> bool {
        let left = self.multiply_unchecked(&self.multiply_unchecked(x, y), z);
        let right = self.multiply_unchecked(x, &self.multiply_unchecked(y, z));
        left == right
    }

    /// Searches for `y ≠ 0` supported on `ball(window_radius)` with `y x = 0`.
    ///
    /// Rows `h·x` are eliminated in word-length order with an identity
    /// block tracking combinations; the first row that reduces into the
    /// tracking block is a left dependency. The witness is scaled to have
    /// coefficient one at its shortest support element and checked by
    /// multiplication before being returned.
    pub fn find_annihilator(
        &self,
        x: &CrossedElement,
        window_radius: usize,
    ) -> Result<Option<CrossedElement>> {
        self.check_element(x)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let f = &self.field;
        let order: Vec<GroupElement> = self
            .group
            .ball_layers(window_radius)
            .into_iter()
            .flatten()
            .collect();
        let rows: Vec<SparseVector> = order
            .iter()
            .map(|h| {
                let hx =
                    self.multiply_unchecked(&CrossedElement::monomial(f, f.one(), h.clone()), x);
                hx.to_vector(1)
            })
            .collect();
        let cols = ColumnIndex::new(&rows)?;
        let n = cols.len();
        let mut e = Echelon::new(*f);
        for (i, v) in rows.iter().enumerate() {
            let mut r = cols.row(v, 0);
            r.push((n + i, f.one()));
            match e.insert_reduced(r) {
                Some(pivot) if pivot >= n => {
                    let dep = e.rows().last().unwrap();
                    let y = CrossedElement::from_terms(
                        f,
                        dep.iter().map(|(c, a)| (order[c - n].clone(), a.clone())),
                    );
                    let check = self.multiply_unchecked(&y, x);
                    assert!(check.is_zero(), "annihilator witness failed verification");
                    return Ok(Some(y));
                }
                _ => {}
            }
        }
        Ok(None)
    }

    /// For `xy = 1`, reports whether `yx = 1` as well.
    pub fn check_direct_finiteness_witness(
        &self,
        x: &CrossedElement,
        y: &CrossedElement,
    ) -> Result<DirectFiniteness> {
        let one = self.one();
        if self.multiply(x, y)? != one {
            return Ok(DirectFiniteness::NotAWitness);
        }
        Ok(if self.multiply(y, x)? == one {
            DirectFiniteness::Consistent
        } else {
            DirectFiniteness::OneSidedInverse
        })
    }
}

fn random_element<R: Rng>(field: &Field, support: &[GroupElement], rng: &mut R) -> CrossedElement {
    let mut terms = Vec::new();
    for g in support {
        if rng.gen_bool(0.6) {
            terms.push((g.clone(), field.random(rng)));
        }
    }
    CrossedElement::from_terms(field, terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CocycleCondition {
    Cross1,
    Cross2,
    Cross3,
    Associativity,
}

impl fmt::Display for CocycleCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CocycleCondition::Cross1 => "cross1",
            CocycleCondition::Cross2 => "cross2",
            CocycleCondition::Cross3 => "cross3",
            CocycleCondition::Associativity => "associativity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: CocycleCondition,
    pub witness: Vec<GroupElement>,
    pub detail: String,
}

impl Violation {
    fn new(
        condition: CocycleCondition,
        witness: Vec<GroupElement>,
        detail: impl Into<String>,
    ) -> Self {
        Violation {
            condition,
            witness,
            detail: detail.into(),
        }
    }
}

/// Outcome of a sampled cocycle validation. At most one violation is
/// kept per condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub radius: usize,
    pub triples_checked: usize,
    pub element_samples: usize,
    pub violations: Vec<Violation>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, condition: CocycleCondition) -> Option<&Violation> {
        self.violations.iter().find(|v| v.condition == condition)
    }

    /// `key=value` lines.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("result={}", if self.passed() { "pass" } else { "fail" }),
            format!("radius={}", self.radius),
            format!("triples_checked={}", self.triples_checked),
            format!("element_samples={}", self.element_samples),
        ];
        for c in [
            CocycleCondition::Cross1,
            CocycleCondition::Cross2,
            CocycleCondition::Cross3,
            CocycleCondition::Associativity,
        ] {
            match self.violation(c) {
                None => out.push(format!("{c}=pass")),
                Some(v) => {
                    let w: Vec<String> = v.witness.iter().map(|g| g.to_string()).collect();
                    out.push(format!("{c}=fail"));
                    out.push(format!("{c}_witness={}", w.join(" ")));
                    out.push(format!("{c}_detail={}", v.detail));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectFiniteness {
    /// `xy ≠ 1`.
    NotAWitness,
    /// `xy = 1` and `yx = 1`.
    Consistent,
    /// `xy = 1` but `yx ≠ 1`.
    OneSidedInverse,
}

/// Element `Σ r_g g` of a crossed product; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CrossedElement {
    terms: BTreeMap<GroupElement, Scalar>,
}

impl CrossedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(field: &Field, c: Scalar, g: GroupElement) -> Self {
        let mut x = CrossedElement::zero();
        x.add_term(field, g, &c);
        x
    }

    /// Sums coefficients of repeated group elements.
    pub fn from_terms(
        field: &Field,
        terms: impl IntoIterator<Item = (GroupElement, Scalar)>,
    ) -> Self {
        let mut x = CrossedElement::zero();
        for (g, c) in terms {
            x.add_term(field, g, &c);
        }
        x
    }

    fn add_term(&mut self, field: &Field, g: GroupElement, c: &Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(slot) => {
                if !field.is_zero(c) {
                    slot.insert(c.clone());
                }
            }
            Entry::Occupied(mut slot) => {
                let s = field.add(slot.get(), c);
                if field.is_zero(&s) {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement) -> Option<&Scalar> {
        self.terms.get(g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> FiniteSubset {
        self.terms.keys().cloned().collect()
    }

    pub fn add(&self, field: &Field, other: &CrossedElement) -> CrossedElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(field, g.clone(), c);
        }
        out
    }

    pub fn neg(&self, field: &Field) -> CrossedElement {
        CrossedElement::from_terms(field, self.terms().map(|(g, c)| (g.clone(), field.neg(c))))
    }

    pub fn sub(&self, field: &Field, other: &CrossedElement) -> CrossedElement {
        self.add(field, &other.neg(field))
    }

    /// The element as a vector of `(K*G)^r` at coordinate `coord`.
    pub fn to_vector(&self, coord: usize) -> SparseVector {
        let mut v = SparseVector::zero();
        for (g, c) in self.terms() {
            // coefficients are already nonzero
            v.insert_raw((g.clone(), coord), c.clone());
        }
        v
    }

    /// `"c*(g) + c*(h)"` in canonical order, `"0"` for zero.
    pub fn format(&self, field: &Field) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(g, c)| format!("{}*{g}", field.format(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the text form. Repeated elements are summed; explicit zero
    /// coefficients are rejected.
    pub fn parse(s: &str, field: &Field, kind: GroupKind) -> Result<CrossedElement> {
        if s.trim() == "0" {
            return Ok(CrossedElement::zero());
        }
        let mut x = CrossedElement::zero();
        let mut offset = 0usize;
        for term in s.split(" + ") {
            let col = offset + 1 + (term.len() - term.trim_start().len());
            offset += term.len() + 3;
            let t = term.trim();
            let split = t.rfind("*(").ok_or_else(|| {
                Error::parse(1, col, format!("term {t:?} is not of the form coeff*(g)"))
            })?;
            let c = field
                .parse(&t[..split])
                .map_err(|e| Error::parse(1, col, e.to_string()))?;
            if field.is_zero(&c) {
                return Err(Error::parse(1, col, format!("zero coefficient in {t:?}")));
            }
            let g = kind
                .parse_element(&t[split + 1..])
                .map_err(|e| Error::parse(1, col + split + 1, e.to_string()))?;
            x.add_term(field, g, &c);
        }
        Ok(x)
    }
}
