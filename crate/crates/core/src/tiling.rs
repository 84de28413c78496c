//! Quasi-tiling combinatorics: ε-disjoint families, α-covers, greedy
//! quasi-tilings with an independent checker, `(E, F)`-nets, and the
//! upper bound `Mε + max_i f(F_{n_i})/|F_{n_i}| / (1 − ε)`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::folner::FolnerScheme;
use crate::groups::{FiniteSubset, GroupElement};
use crate::rational::{self, Rational};

/// Smallest `k` with `k / n > 1 − ε`.
fn strict_share(n: usize, eps: &Rational) -> usize {
    let bound = (Rational::one() - eps) * rational::from_usize(n);
    let floor = bound.floor().to_integer();
    let floor: usize = floor.try_into().unwrap_or(0);
    floor + 1
}

fn check_open_unit(eps: &Rational, what: &str) -> Result<()> {
    if eps <= &Rational::zero() || eps >= &Rational::one() {
        return Err(Error::param(format!(
            "{what} must lie in (0, 1), got {}",
            rational::format(eps)
        )));
    }
    Ok(())
}

/// Decides ε-disjointness exactly and returns witnesses `A'_i ⊆ A_i` when
/// the family is ε-disjoint.
///
/// Each `A_i` needs `k_i = ⌊(1−ε)|A_i|⌋ + 1` private elements. A greedy
/// pass gives every set the elements not claimed by an earlier set; if some
/// set falls short, augmenting paths (a bipartite b-matching between sets
/// and elements) settle the question exactly.
pub fn check_epsilon_disjoint(
    family: &[FiniteSubset],
    eps: &Rational,
) -> Option<Vec<FiniteSubset>> {
    let need: Vec<usize> = family.iter().map(|a| strict_share(a.len(), eps)).collect();
    if family.iter().zip(&need).any(|(a, k)| *k > a.len()) {
        return None;
    }
    let mut m = Matching {
        family,
        need: &need,
        owner: HashMap::new(),
        count: vec![0; family.len()],
    };
    for (i, a) in family.iter().enumerate() {
        for g in a.iter() {
            if let std::collections::hash_map::Entry::Vacant(slot) = m.owner.entry(g) {
                slot.insert(i);
                m.count[i] += 1;
            }
        }
    }
    for (i, &want) in need.iter().enumerate() {
        while m.count[i] < want {
            let mut visited = HashSet::new();
            if !m.augment(i, &mut visited) {
                return None;
            }
            m.count[i] += 1;
        }
    }
    let mut witnesses: Vec<Vec<GroupElement>> = vec![Vec::new(); family.len()];
    for (g, &i) in &m.owner {
        witnesses[i].push((*g).clone());
    }
    Some(witnesses.into_iter().map(FiniteSubset::from_iter).collect())
}

struct Matching<'a> {
    family: &'a [FiniteSubset],
    need: &'a [usize],
    owner: HashMap<&'a GroupElement, usize>,
    count: Vec<usize>,
}

impl<'a> Matching<'a> {
    /// Finds one more element for `set`, possibly re-routing others.
    fn augment(&mut self, set: usize, visited: &mut HashSet<&'a GroupElement>) -> bool {
        let family = self.family;
        for g in family[set].iter() {
            if !visited.insert(g) {
                continue;
            }
            match self.owner.get(g).copied() {
                None => {
                    self.owner.insert(g, set);
                    return true;
                }
                Some(other) if other != set => {
                    if self.count[other] > self.need[other] {
                        self.count[other] -= 1;
                        self.owner.insert(g, set);
                        return true;
                    }
                    if self.augment(other, visited) {
                        // `other` gained a replacement and loses g
                        self.owner.insert(g, set);
                        return true;
                    }
                }
                _ => {}
            }
        }
        false
    }
}

/// `|A ∩ ⋃ A_i| / |A|`.
pub fn cover_ratio(a: &FiniteSubset, family: &[FiniteSubset]) -> Rational {
    if a.is_empty() {
        return Rational::one();
    }
    let covered = a
        .iter()
        .filter(|g| family.iter().any(|s| s.contains(g)))
        .count();
    rational::ratio(covered, a.len())
}

pub fn check_alpha_cover(a: &FiniteSubset, family: &[FiniteSubset], alpha: &Rational) -> bool {
    cover_ratio(a, family) >= *alpha
}

/// Tiles `A_i` with centers `C_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiTiling {
    pub tiles: Vec<FiniteSubset>,
    pub centers: Vec<FiniteSubset>,
    pub epsilon: Rational,
}

impl QuasiTiling {
    pub fn translates(&self, i: usize) -> Vec<FiniteSubset> {
        self.centers[i]
            .iter()
            .map(|c| self.tiles[i].translate(c))
            .collect()
    }

    /// `C_i A_i`.
    pub fn tiled_region(&self, i: usize) -> FiniteSubset {
        self.centers[i].product(&self.tiles[i])
    }

    /// `tile_index:center center ...`, one line per tile.
    pub fn to_lines(&self) -> Vec<String> {
        self.centers
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let list: Vec<String> = c.iter().map(|g| g.to_string()).collect();
                format!("{i}:{}", list.join(" "))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub name: &'static str,
    pub pass: bool,
    pub ratio: Rational,
}

impl fmt::Display for ConditionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            self.name,
            self.pass,
            rational::format(&self.ratio)
        )
    }
}

/// Result of checking the three quasi-tiling conditions.
///
/// Ratios: the largest overlap `|cA_i ∩ c'A_i| / |A_i|` between
/// same-tile translates; `|C_iA_i ∩ C_jA_j| / |A|` summed over tile pairs;
/// the cover ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub conditions: [ConditionResult; 3],
}

impl TilingReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn cover_ratio(&self) -> &Rational {
        &self.conditions[2].ratio
    }
}

pub fn check_quasi_tiling(a: &FiniteSubset, t: &QuasiTiling) -> TilingReport {
    let k = t.tiles.len();
    let eps = &t.epsilon;

    let mut cond1 = true;
    let mut max_overlap = Rational::zero();
    for i in 0..k {
        let translates = t.translates(i);
        if translates.iter().any(|tr| !tr.is_subset(a)) {
            cond1 = false;
        }
        let size = t.tiles[i].len().max(1);
        for (x, tx) in translates.iter().enumerate() {
            for ty in &translates[x + 1..] {
                let o = rational::ratio(tx.intersection_len(ty), size);
                if o > max_overlap {
                    max_overlap = o;
                }
            }
        }
        if cond1 && check_epsilon_disjoint(&translates, eps).is_none() {
            cond1 = false;
        }
    }

    let regions: Vec<FiniteSubset> = (0..k).map(|i| t.tiled_region(i)).collect();
    let mut cross = 0usize;
    for i in 0..k {
        for j in i + 1..k {
            cross += regions[i].intersection_len(&regions[j]);
        }
    }
    let cross_ratio = if a.is_empty() {
        Rational::zero()
    } else {
        rational::ratio(cross, a.len())
    };

    let cover = if t.centers.iter().all(|c| c.is_empty()) {
        Rational::zero()
    } else {
        cover_ratio(a, &regions)
    };
    let alpha = Rational::one() - eps;

    TilingReport {
        conditions: [
            ConditionResult {
                name: "containment_eps_disjoint",
                pass: cond1,
                ratio: max_overlap,
            },
            ConditionResult {
                name: "cross_tile_disjoint",
                pass: cross == 0,
                ratio: cross_ratio,
            },
            ConditionResult {
                name: "cover",
                pass: cover >= alpha,
                ratio: cover,
            },
        ],
    }
}

/// Greedy quasi-tiling: largest tiles first. Each tile gets two scans of
/// `A` in canonical order. A center is accepted when the translate lies in
/// `A` and misses every other tile's translates; the first scan takes only
/// translates disjoint from everything placed so far, the second also
/// those overlapping earlier translates of the same tile in fewer than
/// `ε|A_i|` elements.
///
/// The result is re-checked with [`check_quasi_tiling`]; failure to reach
/// a `(1 − ε)`-cover is reported as an error.
pub fn greedy_quasi_tile(
    a: &FiniteSubset,
    tiles: &[FiniteSubset],
    eps: &Rational,
) -> Result<QuasiTiling> {
    if tiles.is_empty() || tiles.iter().any(|t| t.is_empty()) {
        return Err(Error::param("tiles must be nonempty"));
    }
    let quarter = rational::ratio(1, 4);
    if eps <= &Rational::zero() || eps > &quarter {
        return Err(Error::param(format!(
            "ε must lie in (0, 1/4], got {}",
            rational::format(eps)
        )));
    }
    let mut order: Vec<usize> = (0..tiles.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(tiles[i].len()));

    let mut owner: HashMap<GroupElement, usize> = HashMap::new();
    let mut centers: Vec<Vec<GroupElement>> = vec![Vec::new(); tiles.len()];
    for &i in &order {
        let tile = &tiles[i];
        let limit = eps * rational::from_usize(tile.len());
        for disjoint_only in [true, false] {
            for c in a.iter() {
                let translate: Vec<GroupElement> = tile.iter().map(|x| c.mul(x)).collect();
                if !translate.iter().all(|g| a.contains(g)) {
                    continue;
                }
                let mut overlap = 0usize;
                let mut foreign = false;
                for g in &translate {
                    match owner.get(g) {
                        Some(&o) if o == i => overlap += 1,
                        Some(_) => {
                            foreign = true;
                            break;
                        }
                        None => {}
                    }
                }
                if foreign
                    || (disjoint_only && overlap > 0)
                    || rational::from_usize(overlap) >= limit
                {
                    continue;
                }
                for g in translate {
                    owner.entry(g).or_insert(i);
                }
                centers[i].push(c.clone());
            }
        }
    }
    let tiling = QuasiTiling {
        tiles: tiles.to_vec(),
        centers: centers.into_iter().map(FiniteSubset::from_iter).collect(),
        epsilon: eps.clone(),
    };
    let report = check_quasi_tiling(a, &tiling);
    if !report.passed() {
        let failed: Vec<String> = report
            .conditions
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.to_string())
            .collect();
        return Err(Error::Tiling(failed.join("; ")));
    }
    Ok(tiling)
}

/// Window restriction of an `(E, F)`-net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    pub points: FiniteSubset,
    pub e: FiniteSubset,
    pub f: FiniteSubset,
    pub window: FiniteSubset,
}

/// Greedy maximal `𝒩 ⊆ window` with pairwise disjoint translates `gE`,
/// followed by a check that `⋃ gF` covers the window.
pub fn build_net(e: &FiniteSubset, f: &FiniteSubset, window: &FiniteSubset) -> Result<Net> {
    if e.is_empty() {
        return Err(Error::param("E must be nonempty"));
    }
    let mut used: HashSet<GroupElement> = HashSet::new();
    let mut points = Vec::new();
    for g in window.iter() {
        let ge: Vec<GroupElement> = e.iter().map(|x| g.mul(x)).collect();
        if ge.iter().any(|x| used.contains(x)) {
            continue;
        }
        used.extend(ge);
        points.push(g.clone());
    }
    let points = FiniteSubset::from_iter(points);
    let covered: HashSet<GroupElement> = points
        .iter()
        .flat_map(|g| f.iter().map(move |x| g.mul(x)))
        .collect();
    let uncovered: Vec<&GroupElement> = window.iter().filter(|x| !covered.contains(*x)).collect();
    if let Some(first) = uncovered.first() {
        return Err(Error::NetCoverage {
            uncovered: uncovered.len(),
            first: first.to_string(),
        });
    }
    Ok(Net {
        points,
        e: e.clone(),
        f: f.clone(),
        window: window.clone(),
    })
}

/// `|F_n ∩ 𝒩| / |F_n|`.
pub fn net_density(net: &Net, scheme: &FolnerScheme, n: usize) -> Result<Rational> {
    let fnset = scheme.set(n);
    if !fnset.is_subset(&net.window) {
        return Err(Error::WindowTooSmall(format!(
            "F_{n} is not inside the net window"
        )));
    }
    Ok(rational::ratio(
        fnset.intersection_len(&net.points),
        fnset.len(),
    ))
}

/// `M ε + max(tile_ratios) / (1 − ε)`.
pub fn ow_upper_bound(m: &Rational, eps: &Rational, tile_ratios: &[Rational]) -> Result<Rational> {
    check_open_unit(eps, "ε")?;
    let max = rational::max_of(tile_ratios).ok_or_else(|| Error::param("no tile ratios"))?;
    Ok(m * eps + max / (Rational::one() - eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{interval, z, GroupKind, GroupSpec};
    use crate::rational::ratio;
    use proptest::prelude::*;

    /// Exhaustive ε-disjointness decision over all subset choices; only
    /// for tiny families.
    fn brute_force_eps_disjoint(family: &[FiniteSubset], eps: &Rational) -> bool {
        let universe: Vec<GroupElement> =
            FiniteSubset::from_iter(family.iter().flat_map(|a| a.to_vec())).to_vec();
        // assign each element to one of the sets containing it, or none
        fn go(
            idx: usize,
            universe: &[GroupElement],
            family: &[FiniteSubset],
            counts: &mut Vec<usize>,
            need: &[usize],
        ) -> bool {
            if idx == universe.len() {
                return counts.iter().zip(need).all(|(c, n)| c >= n);
            }
            if go(idx + 1, universe, family, counts, need) {
                return true;
            }
            for i in 0..family.len() {
                if family[i].contains(&universe[idx]) {
                    counts[i] += 1;
                    let ok = go(idx + 1, universe, family, counts, need);
                    counts[i] -= 1;
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        let need: Vec<usize> = family.iter().map(|a| strict_share(a.len(), eps)).collect();
        go(0, &universe, family, &mut vec![0; family.len()], &need)
    }

    #[test]
    fn eps_disjoint_examples() {
        let eps = ratio(3, 10);
        let w = check_epsilon_disjoint(&[interval(0, 3), interval(3, 6)], &eps).unwrap();
        assert_eq!(w[1], interval(4, 6));
        let disjoint = [interval(0, 2), interval(5, 9)];
        assert_eq!(
            check_epsilon_disjoint(&disjoint, &ratio(1, 100)).unwrap(),
            disjoint.to_vec()
        );
        let a = interval(0, 3);
        assert!(check_epsilon_disjoint(&[a.clone(), a], &eps).is_none());
    }

    #[test]
    fn matching_beats_greedy_order() {
        // greedy gives {0..3} to the first set, starving the second
        let fam = [interval(0, 3), interval(0, 1)];
        let eps = ratio(3, 5);
        let w = check_epsilon_disjoint(&fam, &eps).unwrap();
        assert_eq!(w[0].len(), 3);
        assert_eq!(w[1].len(), 1);
        assert!(w[0].is_disjoint(&w[1]));
    }

    #[test]
    fn alpha_cover_examples() {
        let a = interval(0, 9);
        let fam = [interval(0, 4), FiniteSubset::from_iter([z(7), z(8)])];
        assert_eq!(cover_ratio(&a, &fam), ratio(7, 10));
        assert!(check_alpha_cover(&a, &fam, &ratio(7, 10)));
        assert!(!check_alpha_cover(&a, &fam, &ratio(71, 100)));
        assert!(check_alpha_cover(&a, &[interval(-5, 20)], &Rational::one()));
        assert!(!check_alpha_cover(&a, &[], &ratio(1, 10)));
    }

    #[test]
    fn checker_examples() {
        let a = interval(-20, 20);
        let t = QuasiTiling {
            tiles: vec![interval(-2, 2)],
            centers: vec![FiniteSubset::from_iter(
                [-18, -13, -8, -3, 2, 7, 12, 17].map(z),
            )],
            epsilon: ratio(1, 10),
        };
        let r = check_quasi_tiling(&a, &t);
        assert!(r.passed());
        assert_eq!(r.cover_ratio(), &ratio(40, 41));

        let empty = QuasiTiling {
            centers: vec![FiniteSubset::empty()],
            ..t.clone()
        };
        let r = check_quasi_tiling(&a, &empty);
        assert!(!r.conditions[2].pass);

        let overlapping = QuasiTiling {
            centers: vec![FiniteSubset::from_iter([z(0), z(1)])],
            ..t
        };
        let r = check_quasi_tiling(&a, &overlapping);
        assert!(!r.conditions[0].pass);
        assert_eq!(r.conditions[0].ratio, ratio(4, 5));
    }

    #[test]
    fn greedy_examples() {
        let a = interval(-20, 20);
        let t = greedy_quasi_tile(&a, &[interval(-2, 2)], &ratio(1, 10)).unwrap();
        assert_eq!(
            t.centers[0],
            FiniteSubset::from_iter([-18, -13, -8, -3, 2, 7, 12, 17].map(z))
        );
        assert_eq!(check_quasi_tiling(&a, &t).cover_ratio(), &ratio(40, 41));
        assert_eq!(
            t.to_lines(),
            vec!["0:(-18) (-13) (-8) (-3) (2) (7) (12) (17)"]
        );

        assert!(matches!(
            greedy_quasi_tile(&interval(0, 3), &[interval(0, 9)], &ratio(1, 10)),
            Err(Error::Tiling(_))
        ));

        let t = greedy_quasi_tile(&a, &[interval(-4, 4), interval(-1, 1)], &ratio(1, 10)).unwrap();
        assert!(check_quasi_tiling(&a, &t).passed());
        assert!(!t.centers[1].is_empty(), "small tile fills the edge");

        assert!(greedy_quasi_tile(&a, &[interval(-2, 2)], &ratio(1, 4)).is_ok());
        assert!(greedy_quasi_tile(&a, &[interval(-2, 2)], &ratio(3, 10)).is_err());
        assert!(greedy_quasi_tile(&a, &[interval(-2, 2)], &Rational::zero()).is_err());
    }

    #[test]
    fn nets() {
        let window = interval(-10, 10);
        let e = interval(0, 1);
        let net = build_net(&e, &e, &window).unwrap();
        assert_eq!(
            net.points,
            FiniteSubset::from_iter((-5..=5).map(|k| z(2 * k)))
        );
        let scheme = FolnerScheme::standard(GroupSpec::new(GroupKind::FreeAbelian(1)));
        assert_eq!(net_density(&net, &scheme, 10).unwrap(), ratio(11, 21));
        assert!(net_density(&net, &scheme, 11).is_err());

        let single = FiniteSubset::singleton(z(0));
        let net = build_net(&single, &single, &window).unwrap();
        assert_eq!(net.points, window);
        assert_eq!(net_density(&net, &scheme, 4).unwrap(), Rational::one());

        let wide = interval(0, 4);
        assert!(matches!(
            build_net(&wide, &single, &window),
            Err(Error::NetCoverage { .. })
        ));
        let eei = wide.product(&wide.inverse());
        assert!(build_net(&wide, &eei, &window).is_ok());
    }

    #[test]
    fn upper_bound_formula() {
        let one = Rational::one();
        assert_eq!(
            ow_upper_bound(&one, &ratio(1, 10), std::slice::from_ref(&one)).unwrap(),
            ratio(109, 90)
        );
        assert_eq!(
            ow_upper_bound(&one, &ratio(1, 100), std::slice::from_ref(&one)).unwrap(),
            ratio(1, 100) + ratio(100, 99)
        );
        assert!(ow_upper_bound(&one, &ratio(1, 10), &[]).is_err());
        assert!(ow_upper_bound(&one, &Rational::zero(), std::slice::from_ref(&one)).is_err());
        let r = ratio(3, 7);
        let tight = ow_upper_bound(&one, &ratio(1, 1_000_000), std::slice::from_ref(&r)).unwrap();
        assert!(tight > r && tight - &r < ratio(1, 100_000));
    }

    fn family_strategy() -> impl Strategy<Value = Vec<FiniteSubset>> {
        proptest::collection::vec(
            proptest::collection::vec(0i64..8, 1..5)
                .prop_map(|v| FiniteSubset::from_iter(v.into_iter().map(z))),
            1..4,
        )
    }

    proptest! {
        #[test]
        fn eps_disjoint_matches_brute_force(fam in family_strategy(), num in 1i64..9) {
            let eps = ratio(num, 10);
            let fast = check_epsilon_disjoint(&fam, &eps);
            prop_assert_eq!(fast.is_some(), brute_force_eps_disjoint(&fam, &eps));
            if let Some(w) = fast {
                for (i, wi) in w.iter().enumerate() {
                    prop_assert!(wi.is_subset(&fam[i]));
                    prop_assert!(rational::ratio(wi.len(), fam[i].len()) > Rational::one() - &eps);
                    for wj in &w[i + 1..] {
                        prop_assert!(wi.is_disjoint(wj));
                    }
                }
            }
        }

        #[test]
        fn greedy_output_passes_checker(lo in -30i64..0, len in 10i64..60, r1 in 0i64..5, r2 in 0i64..3, num in 1i64..25) {
            let a = interval(lo, lo + len);
            let eps = ratio(num, 100);
            if let Ok(t) = greedy_quasi_tile(&a, &[interval(-r1, r1), interval(-r2, r2)], &eps) {
                prop_assert!(check_quasi_tiling(&a, &t).passed());
            }
        }

        #[test]
        fn net_translates_disjoint(pts in proptest::collection::vec(-3i64..3, 1..4)) {
            let e = FiniteSubset::from_iter(pts.into_iter().map(z));
            let f = e.product(&e.inverse());
            let net = build_net(&e, &f, &interval(-15, 15)).unwrap();
            let translates: Vec<_> = net.points.iter().map(|g| e.translate(g)).collect();
            for (i, a) in translates.iter().enumerate() {
                for b in &translates[i + 1..] {
                    prop_assert!(a.is_disjoint(b));
                }
            }
        }

        #[test]
        fn bound_is_monotone(a in 0i64..20, b in 0i64..20, num in 1i64..24) {
            let eps = ratio(num, 100);
            let m = ratio(1, 1);
            let (lo, hi) = (ratio(a.min(b), 10), ratio(a.max(b), 10));
            prop_assert!(ow_upper_bound(&m, &eps, std::slice::from_ref(&lo)).unwrap() <= ow_upper_bound(&m, &eps, std::slice::from_ref(&hi)).unwrap());
            // in ε, for ratios at least M
            let big = &m + &hi;
            let eps2 = &eps + ratio(1, 100);
            prop_assert!(ow_upper_bound(&m, &eps, std::slice::from_ref(&big)).unwrap() <= ow_upper_bound(&m, &eps2, &[big]).unwrap());
        }
    }
}
