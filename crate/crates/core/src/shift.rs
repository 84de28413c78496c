//! Subshift presentations `M = T_G(λ, span_K{v_1..v_m}) ⊆ (K*G)^r`,
//! trajectories `T_F = Σ_{g∈F} λ_g(K₀)`, and quotient trajectory
//! dimensions `dim (T_F + N) / N` approximated from one side.

use std::fmt::Write as _;

use crate::crossed::{CocycleData, CrossedElement, Sigma};
use crate::error::{Error, Result};
use crate::groups::{FiniteSubset, GroupKind, GroupSpec};
use crate::linalg::{span_dim, sum_intersection_dims, Field, SparseVector, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubshiftPresentation {
    cocycle: CocycleData,
    rank: usize,
    generators: Vec<SparseVector>,
}

impl SubshiftPresentation {
    pub fn new(cocycle: CocycleData, rank: usize, generators: Vec<SparseVector>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::param("rank must be at least 1"));
        }
        for (i, v) in generators.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::param(format!("generator {} is zero", i + 1)));
            }
            for ((g, j), c) in v.iter() {
                cocycle.group().check(g)?;
                if *j == 0 || *j > rank {
                    return Err(Error::InconsistentLabels(format!(
                        "coordinate {j} outside 1..={rank}"
                    )));
                }
                if !cocycle.field().contains(c) {
                    return Err(Error::InvalidScalar(format!(
                        "{c:?} in {}",
                        cocycle.field()
                    )));
                }
            }
        }
        Ok(SubshiftPresentation {
            cocycle,
            rank,
            generators,
        })
    }

    /// Bernoulli shift `(K*G)^r`, generated by the unit vectors at `e`.
    pub fn bernoulli(cocycle: CocycleData, rank: usize) -> Result<Self> {
        let e = cocycle.group().identity();
        let gens = (1..=rank)
            .map(|j| SparseVector::unit(cocycle.field(), e.clone(), j))
            .collect();
        Self::new(cocycle, rank, gens)
    }

    /// Principal left ideal `(K*G) x` inside `K*G`.
    pub fn cyclic(cocycle: CocycleData, x: &CrossedElement) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let v = x.to_vector(1);
        Self::new(cocycle, 1, vec![v])
    }

    pub fn zero(cocycle: CocycleData, rank: usize) -> Result<Self> {
        Self::new(cocycle, rank, Vec::new())
    }

    pub fn cocycle(&self) -> &CocycleData {
        &self.cocycle
    }

    pub fn field(&self) -> &Field {
        self.cocycle.field()
    }

    pub fn group(&self) -> &GroupSpec {
        self.cocycle.group()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[SparseVector] {
        &self.generators
    }

    /// Union of the group supports of the generators.
    pub fn support(&self) -> FiniteSubset {
        self.generators
            .iter()
            .flat_map(|v| v.labels().map(|(g, _)| g.clone()).collect::<Vec<_>>())
            .collect()
    }

    /// `dim span_K{v_i} = f({e})`.
    pub fn base_dim(&self) -> usize {
        span_dim(self.field(), &self.generators).expect("generators validated at construction")
    }

    /// `λ_g(v_i)` for all `g ∈ F` and all generators.
    pub fn translates(&self, window: &FiniteSubset) -> Vec<SparseVector> {
        let mut out = Vec::with_capacity(window.len() * self.generators.len());
        for g in window.iter() {
            for v in &self.generators {
                out.push(self.cocycle.act(g, v));
            }
        }
        out
    }

    pub fn trajectory(&self, window: &FiniteSubset) -> Result<TrajectoryResult> {
        let subspace = Subspace::span(self.field(), &self.translates(window))?;
        Ok(TrajectoryResult {
            window: window.clone(),
            dim: subspace.dim(),
            subspace,
        })
    }

    /// `dim T_F`, without materialising the reduced basis.
    pub fn trajectory_dim(&self, window: &FiniteSubset) -> Result<usize> {
        span_dim(self.field(), &self.translates(window))
    }

    fn check_compatible(&self, sub: &SubshiftPresentation) -> Result<()> {
        if self.cocycle != sub.cocycle {
            return Err(Error::param("presentations use different crossed products"));
        }
        if self.rank != sub.rank {
            return Err(Error::param(format!(
                "submodule lives in rank {} but the module in rank {}",
                sub.rank, self.rank
            )));
        }
        Ok(())
    }

    /// Canonical text form; see [`SubshiftPresentation::parse`].
    pub fn to_text(&self) -> String {
        let f = self.field();
        let mut out = String::new();
        writeln!(out, "group={}", self.group().kind()).unwrap();
        writeln!(out, "field={f}").unwrap();
        writeln!(out, "rank={}", self.rank).unwrap();
        if let Sigma::Frobenius { weights } = self.cocycle.sigma() {
            let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
            writeln!(out, "sigma=frobenius:{}", w.join(",")).unwrap();
        }
        for (g, h, c) in self.cocycle.rho_overrides() {
            writeln!(out, "rho={g}|{h}|{}", f.format(c)).unwrap();
        }
        for v in &self.generators {
            let terms: Vec<String> = v
                .iter()
                .map(|((g, j), c)| format!("{g}|{}|{j}", f.format(c)))
                .collect();
            writeln!(out, "{}", terms.join(";")).unwrap();
        }
        out
    }

    /// Plain-text presentation:
    ///
    /// ```text
    /// group=ZxZ2
    /// field=gf3
    /// rank=1
    /// (0,0)|1|1;(0,1)|1|1
    /// ```
    ///
    /// Optional headers `sigma=trivial|frobenius|frobenius:w1,..,wd` and
    /// repeated `rho=(g)|(h)|value`. Each further line is one generator made
    /// of `;`-separated `(g)|coeff|coord` terms with 1-based coordinates.
    /// Repeated `(g, coord)` keys are summed and vanishing sums dropped; an
    /// explicit zero coefficient is an error. `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut group: Option<GroupKind> = None;
        let mut field: Option<Field> = None;
        let mut rank: Option<usize> = None;
        let mut sigma = Sigma::Trivial;
        let mut rho_lines: Vec<(usize, String)> = Vec::new();
        let mut gen_lines: Vec<(usize, &str)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end();
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let col = line.len() - trimmed.len() + 1;
            if let Some((key, value)) = trimmed.split_once('=') {
                let vcol = col + key.len() + 1;
                let value = value.trim();
                match key.trim() {
                    "group" => {
                        group = Some(
                            value
                                .parse()
                                .map_err(|e: Error| Error::parse(line_no, vcol, e.to_string()))?,
                        )
                    }
                    "field" => {
                        field = Some(
                            value
                                .parse()
                                .map_err(|e: Error| Error::parse(line_no, vcol, e.to_string()))?,
                        )
                    }
                    "rank" => {
                        rank = Some(value.parse().map_err(|_| {
                            Error::parse(line_no, vcol, format!("bad rank {value:?}"))
                        })?)
                    }
                    "sigma" => {
                        sigma = parse_sigma(value)
                            .map_err(|e| Error::parse(line_no, vcol, e.to_string()))?
                    }
                    "rho" => rho_lines.push((line_no, value.to_string())),
                    other => {
                        return Err(Error::parse(line_no, col, format!("unknown key {other:?}")))
                    }
                }
                continue;
            }
            if !gen_lines.is_empty() || trimmed.starts_with('(') {
                gen_lines.push((line_no, line));
            } else {
                return Err(Error::parse(
                    line_no,
                    col,
                    "expected key=value or a generator line",
                ));
            }
        }
        let group = group.ok_or_else(|| Error::parse(1, 1, "missing group= header"))?;
        let field = field.ok_or_else(|| Error::parse(1, 1, "missing field= header"))?;
        let rank = rank.ok_or_else(|| Error::parse(1, 1, "missing rank= header"))?;
        let spec = GroupSpec::new(group);
        let mut cocycle = CocycleData::trivial(spec, field)
            .with_sigma(sigma)
            .map_err(|e| Error::parse(1, 1, e.to_string()))?;
        for (line_no, value) in rho_lines {
            let parts: Vec<&str> = value.split('|').collect();
            if parts.len() != 3 {
                return Err(Error::parse(line_no, 1, "rho needs (g)|(h)|value"));
            }
            let g = group
                .parse_element(parts[0])
                .map_err(|e| Error::parse(line_no, 1, e.to_string()))?;
            let h = group
                .parse_element(parts[1])
                .map_err(|e| Error::parse(line_no, 1, e.to_string()))?;
            let c = field
                .parse(parts[2])
                .map_err(|e| Error::parse(line_no, 1, e.to_string()))?;
            cocycle = cocycle
                .with_rho(g, h, c)
                .map_err(|e| Error::parse(line_no, 1, e.to_string()))?;
        }
        let mut generators = Vec::new();
        for (line_no, line) in gen_lines {
            let mut v = SparseVector::zero();
            let mut offset = 0usize;
            for term in line.split(';') {
                let col = offset + 1 + (term.len() - term.trim_start().len());
                offset += term.len() + 1;
                let parts: Vec<&str> = term.trim().split('|').collect();
                if parts.len() != 3 {
                    return Err(Error::parse(
                        line_no,
                        col,
                        format!("term {:?} is not (g)|coeff|coord", term.trim()),
                    ));
                }
                let g = group
                    .parse_element(parts[0])
                    .map_err(|e| Error::parse(line_no, col, e.to_string()))?;
                let c = field
                    .parse(parts[1])
                    .map_err(|e| Error::parse(line_no, col, e.to_string()))?;
                if field.is_zero(&c) {
                    return Err(Error::parse(line_no, col, "zero coefficient"));
                }
                let j: usize = parts[2].trim().parse().map_err(|_| {
                    Error::parse(line_no, col, format!("bad coordinate {:?}", parts[2]))
                })?;
                if j == 0 || j > rank {
                    return Err(Error::parse(
                        line_no,
                        col,
                        format!("coordinate {j} outside 1..={rank}"),
                    ));
                }
                v.add_term(&field, (g, j), &c);
            }
            if v.is_zero() {
                return Err(Error::parse(line_no, 1, "generator sums to zero"));
            }
            generators.push(v);
        }
        SubshiftPresentation::new(cocycle, rank, generators)
    }
}

fn parse_sigma(s: &str) -> Result<Sigma> {
    match s {
        "trivial" => Ok(Sigma::Trivial),
        "frobenius" => Ok(Sigma::Frobenius { weights: vec![] }),
        _ => {
            let w = s
                .strip_prefix("frobenius:")
                .ok_or_else(|| Error::param(format!("unknown sigma {s:?}")))?;
            let weights = w
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::param(format!("bad weight {x:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Sigma::Frobenius { weights })
        }
    }
}

/// Generator list in the inline form `coeff*(g)|coord + ...; ...`:
/// generators are `;`-separated, terms within one generator joined by `+`.
pub fn parse_generator_list(s: &str, field: &Field, kind: GroupKind) -> Result<Vec<SparseVector>> {
    let mut out = Vec::new();
    let mut offset = 0usize;
    for gen in s.split(';') {
        let base = offset;
        offset += gen.len() + 1;
        if gen.trim().is_empty() {
            continue;
        }
        let mut v = SparseVector::zero();
        let mut inner = 0usize;
        for term in gen.split('+').filter(|t| !t.trim().is_empty()) {
            let col = base + inner + 1 + (term.len() - term.trim_start().len());
            inner += term.len() + 1;
            let t = term.trim();
            let (lhs, coord) = t.rsplit_once('|').ok_or_else(|| {
                Error::parse(1, col, format!("term {t:?} is not coeff*(g)|coord"))
            })?;
            let split = lhs.rfind("*(").ok_or_else(|| {
                Error::parse(1, col, format!("term {t:?} is not coeff*(g)|coord"))
            })?;
            let c = field
                .parse(&lhs[..split])
                .map_err(|e| Error::parse(1, col, e.to_string()))?;
            if field.is_zero(&c) {
                return Err(Error::parse(1, col, "zero coefficient"));
            }
            let g = kind
                .parse_element(&lhs[split + 1..])
                .map_err(|e| Error::parse(1, col, e.to_string()))?;
            let j: usize = coord
                .trim()
                .parse()
                .map_err(|_| Error::parse(1, col, format!("bad coordinate {coord:?}")))?;
            v.add_term(field, (g, j), &c);
        }
        if v.is_zero() {
            return Err(Error::parse(1, base + 1, "generator sums to zero"));
        }
        out.push(v);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryResult {
    pub window: FiniteSubset,
    pub subspace: Subspace,
    pub dim: usize,
}

/// Stopping rule for the increasing approximations `N_m` of a submodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizationConfig {
    /// Consecutive unchanged steps required to declare stabilization.
    pub stability_window: usize,
    pub max_steps: usize,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        StabilizationConfig {
            stability_window: 3,
            max_steps: 16,
        }
    }
}

impl StabilizationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.stability_window == 0 {
            return Err(Error::param("stability_window must be at least 1"));
        }
        if self.max_steps == 0 {
            return Err(Error::param("max_steps must be at least 1"));
        }
        Ok(())
    }
}

/// `dim (T_F + N) / N` with its approximation record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDim {
    pub trajectory_dim: usize,
    /// `dim (T_F ∩ N_m)` at the last step.
    pub intersection_dim: usize,
    /// `dim (T_F + N_m) - dim N_m` at the last step.
    pub image_dim: usize,
    /// `trajectory_dim - intersection_dim`; an upper bound until stabilized.
    pub dim: usize,
    pub stabilized: bool,
    /// `dim (T_F ∩ N_m)` for `m = 0, 1, ...`.
    pub history: Vec<usize>,
}

/// Dimensions of `0 → T_F ∩ N → T_F → (T_F + N)/N → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SesDims {
    pub dim_t: usize,
    pub dim_t_cap_n: usize,
    pub dim_image: usize,
    pub stabilized: bool,
}

impl SesDims {
    pub fn is_exact(&self) -> bool {
        self.dim_t == self.dim_t_cap_n + self.dim_image
    }
}

/// `dim (T_F + N) / N`, computed as `dim T_F − dim (T_F ∩ N_m)` where
/// `N_m` is the trajectory of `N`'s generators over
/// `E_m = F · supp(M) · supp(N)^{-1} · B_m(S)`. The intersection dimension
/// is nondecreasing in `m`; iteration stops once it has been unchanged for
/// `stability_window` consecutive steps.
pub fn trajectory_dim_quotient(
    module: &SubshiftPresentation,
    sub: &SubshiftPresentation,
    window: &FiniteSubset,
    approx: &StabilizationConfig,
) -> Result<QuotientDim> {
    module.check_compatible(sub)?;
    approx.validate()?;
    let field = module.field();
    let translates = module.translates(window);
    let trajectory_dim = span_dim(field, &translates)?;
    if sub.generators.is_empty() || trajectory_dim == 0 {
        return Ok(QuotientDim {
            trajectory_dim,
            intersection_dim: 0,
            image_dim: trajectory_dim,
            dim: trajectory_dim,
            stabilized: true,
            history: vec![0],
        });
    }
    let hull = window
        .product(&module.support())
        .product(&sub.support().inverse());
    let mut history = Vec::new();
    let mut image_dim = trajectory_dim;
    let mut stabilized = false;
    for m in 0..approx.max_steps {
        let e_m = hull.product(&module.group().ball(m));
        let w = sub.translates(&e_m);
        let dims = sum_intersection_dims(field, &translates, &w)?;
        history.push(dims.dim_intersection);
        image_dim = dims.dim_sum - dims.dim_w;
        let k = approx.stability_window;
        if history.len() > k
            && history[history.len() - 1 - k..]
                .iter()
                .all(|&d| d == dims.dim_intersection)
        {
            stabilized = true;
            break;
        }
        if dims.dim_intersection == trajectory_dim {
            // T_F ⊆ N_m already; nothing left to capture
            stabilized = true;
            break;
        }
    }
    let intersection_dim = *history.last().unwrap();
    Ok(QuotientDim {
        trajectory_dim,
        intersection_dim,
        image_dim,
        dim: trajectory_dim - intersection_dim,
        stabilized,
        history,
    })
}

pub fn ses_dims(
    module: &SubshiftPresentation,
    sub: &SubshiftPresentation,
    window: &FiniteSubset,
    approx: &StabilizationConfig,
) -> Result<SesDims> {
    let q = trajectory_dim_quotient(module, sub, window, approx)?;
    Ok(SesDims {
        dim_t: q.trajectory_dim,
        dim_t_cap_n: q.intersection_dim,
        dim_image: q.image_dim,
        stabilized: q.stabilized,
    })
}
