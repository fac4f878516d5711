//! The Cremona-Richmond configuration: 15 pairs and 15 perfect matchings of
//! {1..6}, the six pentads, and the (10_3, 5_6) configuration with its
//! Petersen graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::ExactMatrix;
use crate::models::ozeki::OzekiData;
use crate::multilinear::ThetaTensor;

/// Unordered pair of {0..5}, smaller first.
pub type Pair = (usize, usize);

pub fn pair(a: usize, b: usize) -> Pair {
    (a.min(b), a.max(b))
}

pub fn all_pairs(n: usize) -> Vec<Pair> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Perfect matching of {0..5}; pairs sorted, so the form is canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching(pub [Pair; 3]);

impl Matching {
    pub fn new(mut p: [Pair; 3]) -> Self {
        for x in &mut p {
            *x = pair(x.0, x.1);
        }
        p.sort_unstable();
        Matching(p)
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.0.contains(&p)
    }

    pub fn shared(&self, o: &Matching) -> usize {
        self.0.iter().filter(|p| o.contains(**p)).count()
    }

    pub fn apply(&self, g: &[usize]) -> Matching {
        Matching::new(self.0.map(|(a, b)| (g[a], g[b])))
    }

    /// Parse "(12|34|56)" with 1-based symbols.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = body.split('|').collect();
        let bad = || Error::Parse(format!("matching {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut out = [(0, 0); 3];
        let mut seen = BTreeSet::new();
        for (i, p) in parts.iter().enumerate() {
            let d: Vec<usize> = p.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>().ok_or_else(bad)?;
            if d.len() != 2 || d.iter().any(|&x| !(1..=6).contains(&x)) {
                return Err(bad());
            }
            seen.extend(d.iter().copied());
            out[i] = (d[0] - 1, d[1] - 1);
        }
        if seen.len() != 6 {
            return Err(bad());
        }
        Ok(Matching::new(out))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|(a, b)| format!("{}{}", a + 1, b + 1)).collect();
        write!(f, "({})", s.join("|"))
    }
}

pub fn all_matchings() -> Vec<Matching> {
    let mut out = Vec::new();
    for b in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != b).collect();
        for &c in &rest[1..] {
            let r: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != c).collect();
            out.push(Matching::new([(0, b), (rest[0], c), (r[0], r[1])]));
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceStructure {
    pub points: Vec<String>,
    pub blocks: Vec<String>,
    /// incidence[i][j]: point i lies on block j
    pub incidence: Vec<Vec<bool>>,
}

impl IncidenceStructure {
    pub fn row_sums(&self) -> Vec<usize> {
        self.incidence.iter().map(|r| r.iter().filter(|&&x| x).count()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.blocks.len()).map(|j| self.incidence.iter().filter(|r| r[j]).count()).collect()
    }

    /// (v_r, b_k): every point on r blocks, every block through k points.
    pub fn has_parameters(&self, v: usize, r: usize, b: usize, k: usize) -> bool {
        self.points.len() == v && self.blocks.len() == b && self.row_sums().iter().all(|&x| x == r) && self.col_sums().iter().all(|&x| x == k)
    }

    /// Two blocks never share two points.
    pub fn is_linear(&self) -> bool {
        let b = self.blocks.len();
        (0..b).all(|x| (x + 1..b).all(|y| self.incidence.iter().filter(|r| r[x] && r[y]).count() <= 1))
    }

    pub fn transpose(&self) -> Self {
        IncidenceStructure {
            points: self.blocks.clone(),
            blocks: self.points.clone(),
            incidence: (0..self.blocks.len()).map(|j| self.incidence.iter().map(|r| r[j]).collect()).collect(),
        }
    }

    /// Whether (point map, block map) carries self onto o.
    pub fn is_isomorphism(&self, o: &Self, pmap: &[usize], bmap: &[usize]) -> bool {
        let bij = |m: &[usize], n: usize| m.len() == n && m.iter().collect::<BTreeSet<_>>().len() == n && m.iter().all(|&x| x < n);
        bij(pmap, o.points.len())
            && bij(bmap, o.blocks.len())
            && (0..self.points.len()).all(|i| (0..self.blocks.len()).all(|j| self.incidence[i][j] == o.incidence[pmap[i]][bmap[j]]))
    }
}

pub fn cremona_richmond() -> IncidenceStructure {
    let pairs = all_pairs(6);
    let ms = all_matchings();
    IncidenceStructure {
        points: pairs.iter().map(|(a, b)| format!("{}{}", a + 1, b + 1)).collect(),
        blocks: ms.iter().map(ToString::to_string).collect(),
        incidence: pairs.iter().map(|p| ms.iter().map(|m| m.contains(*p)).collect()).collect(),
    }
}

/// Five matchings using all 15 pairs; sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pentad(pub Vec<Matching>);

impl Pentad {
    pub fn new(mut ms: Vec<Matching>) -> Self {
        ms.sort_unstable();
        Pentad(ms)
    }

    pub fn is_valid(&self) -> bool {
        let pairs: BTreeSet<Pair> = self.0.iter().flat_map(|m| m.0).collect();
        self.0.len() == 5 && pairs.len() == 15
    }

    pub fn apply(&self, g: &[usize]) -> Pentad {
        Pentad::new(self.0.iter().map(|m| m.apply(g)).collect())
    }

    pub fn contains(&self, m: &Matching) -> bool {
        self.0.contains(m)
    }
}

impl fmt::Display for Pentad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Exhaustive search over 5-subsets of the 15 matchings.
pub fn enumerate_pentads() -> Vec<Pentad> {
    let ms = all_matchings();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn go(ms: &[Matching], start: usize, cur: &mut Vec<usize>, out: &mut Vec<Pentad>) {
        if cur.len() == 5 {
            let p = Pentad::new(cur.iter().map(|&i| ms[i]).collect());
            if p.is_valid() {
                out.push(p);
            }
            return;
        }
        for i in start..ms.len() {
            cur.push(i);
            go(ms, i + 1, cur, out);
            cur.pop();
        }
    }
    go(&ms, 0, &mut cur, &mut out);
    out.sort_unstable();
    out
}

/// Columns A..F of the printed table.
pub const PRINTED_PENTADS: [[&str; 5]; 6] = [
    ["(12|34|56)", "(13|25|46)", "(14|26|35)", "(15|24|36)", "(16|23|45)"],
    ["(12|34|56)", "(13|26|45)", "(14|25|36)", "(15|23|46)", "(16|24|35)"],
    ["(12|35|46)", "(13|24|56)", "(14|25|36)", "(15|26|34)", "(16|23|45)"],
    ["(12|35|46)", "(13|26|45)", "(14|23|56)", "(15|24|36)", "(16|25|34)"],
    ["(12|36|45)", "(13|25|46)", "(14|23|56)", "(15|26|34)", "(16|24|35)"],
    ["(12|36|45)", "(13|24|56)", "(14|26|35)", "(15|23|46)", "(16|25|34)"],
];

pub fn printed_pentads() -> Result<Vec<Pentad>> {
    PRINTED_PENTADS.iter().map(|col| Ok(Pentad::new(col.iter().map(|s| Matching::parse(s)).collect::<Result<_>>()?))).collect()
}

/// Permutation of the pentad list induced by g in S6.
pub fn pentad_action(pentads: &[Pentad], g: &[usize]) -> Vec<usize> {
    pentads.iter().map(|p| {
        let img = p.apply(g);
        pentads.iter().position(|x| *x == img).expect("pentads are permuted")
    }).collect()
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a o b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct PentadReport {
    pub count: usize,
    pub pentads: Vec<String>,
    pub matches_printed: bool,
    pub each_matching_in_two: bool,
    pub transitive: bool,
    pub homomorphism_seed: u64,
    pub homomorphism_pairs: usize,
    pub homomorphism_holds: bool,
}

impl PentadReport {
    pub fn passed(&self) -> bool {
        self.count == 6 && self.matches_printed && self.each_matching_in_two && self.transitive && self.homomorphism_holds
    }
}

pub fn pentad_report(seed: u64, pairs: usize) -> Result<PentadReport> {
    let ps = enumerate_pentads();
    let mut printed = printed_pentads()?;
    printed.sort_unstable();
    let each = all_matchings().iter().all(|m| ps.iter().filter(|p| p.contains(m)).count() == 2);
    let mut orbit = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    let gens: [Vec<usize>; 2] = [vec![1, 0, 2, 3, 4, 5], vec![1, 2, 3, 4, 5, 0]];
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let j = pentad_action(&ps, g)[i];
            if orbit.insert(j) {
                queue.push_back(j);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hom = (0..pairs).all(|_| {
        let (g, h) = (random_perm(&mut rng, 6), random_perm(&mut rng, 6));
        pentad_action(&ps, &compose(&g, &h)) == compose(&pentad_action(&ps, &g), &pentad_action(&ps, &h))
    });
    Ok(PentadReport {
        count: ps.len(),
        pentads: ps.iter().map(ToString::to_string).collect(),
        matches_printed: ps == printed,
        each_matching_in_two: each,
        transitive: orbit.len() == ps.len(),
        homomorphism_seed: seed,
        homomorphism_pairs: pairs,
        homomorphism_holds: hom,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CremonaRichmondReport {
    pub is_15_3_15_3: bool,
    pub linear: bool,
    /// matching -> pair of pentads containing it (labels 1..6)
    pub duality_points: Vec<(String, String)>,
    /// pair (ab) -> the three pentad pairs swapped by (ab)
    pub duality_blocks: Vec<(String, String)>,
    pub self_dual: bool,
    pub meet_in_point: bool,
    pub meet_in_line: bool,
}

impl CremonaRichmondReport {
    pub fn passed(&self) -> bool {
        self.is_15_3_15_3 && self.linear && self.self_dual && self.meet_in_point && self.meet_in_line
    }
}

/// The transpose of the configuration is mapped onto it through the pentads:
/// a matching goes to the two pentads containing it, a pair (ab) to the
/// three pentad pairs exchanged by the transposition (ab).
pub fn cremona_richmond_report() -> Result<CremonaRichmondReport> {
    let cr = cremona_richmond();
    let t = cr.transpose();
    let ps = enumerate_pentads();
    let ms = all_matchings();
    let pairs = all_pairs(6);
    let mut pmap = Vec::new();
    let mut dp = Vec::new();
    for m in &ms {
        let owners: Vec<usize> = (0..ps.len()).filter(|&i| ps[i].contains(m)).collect();
        if owners.len() != 2 {
            return Err(Error::Inconsistent(format!("{m} lies in {} pentads", owners.len())));
        }
        let d = pair(owners[0], owners[1]);
        pmap.push(pairs.iter().position(|x| *x == d).expect("pair of labels"));
        dp.push((m.to_string(), format!("{}{}", d.0 + 1, d.1 + 1)));
    }
    let mut bmap = Vec::new();
    let mut db = Vec::new();
    for &(a, b) in &pairs {
        let mut g: Vec<usize> = (0..6).collect();
        g.swap(a, b);
        let img = pentad_action(&ps, &g);
        let cyc: Vec<Pair> = (0..6).filter(|&i| img[i] > i).map(|i| (i, img[i])).collect();
        if cyc.len() != 3 {
            return Err(Error::Inconsistent(format!("({}{}) acts on pentads as {img:?}", a + 1, b + 1)));
        }
        let s = Matching::new([cyc[0], cyc[1], cyc[2]]);
        bmap.push(ms.iter().position(|x| *x == s).expect("a matching"));
        db.push((format!("{}{}", a + 1, b + 1), s.to_string()));
    }
    let m = |s: &str| Matching::parse(s);
    Ok(CremonaRichmondReport {
        is_15_3_15_3: cr.has_parameters(15, 3, 15, 3),
        linear: cr.is_linear(),
        self_dual: t.is_isomorphism(&cr, &pmap, &bmap),
        duality_points: dp,
        duality_blocks: db,
        meet_in_point: m("(12|34|56)")?.shared(&m("(13|25|46)")?) == 0,
        meet_in_line: m("(12|34|56)")?.shared(&m("(12|35|46)")?) == 1,
    })
}

/// Hyperplane symbols H_jk against plane symbols p_i: p_i in H_jk iff i not in {j,k}.
pub fn abstract_10_3_5_6() -> IncidenceStructure {
    let hs = all_pairs(5);
    IncidenceStructure {
        points: hs.iter().map(|(j, k)| format!("H{}{}", j + 1, k + 1)).collect(),
        blocks: (1..=5).map(|i| format!("p{i}")).collect(),
        incidence: hs.iter().map(|&(j, k)| (0..5).map(|i| i != j && i != k).collect()).collect(),
    }
}

/// Graph on the ten H_jk, edges between disjoint index pairs.
pub fn disjointness_graph() -> Vec<Vec<usize>> {
    let hs = all_pairs(5);
    hs.iter()
        .map(|&(a, b)| (0..hs.len()).filter(|&y| { let (c, d) = hs[y]; a != c && a != d && b != c && b != d }).collect())
        .collect()
}

/// Shortest cycle length, by breadth-first search from every vertex.
pub fn girth(adj: &[Vec<usize>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..adj.len() {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![usize::MAX; adj.len()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                } else if parent[x] != y {
                    let c = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
            }
        }
    }
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct PetersenReport {
    pub abstract_10_3_5_6: bool,
    pub vertices: usize,
    pub edges: usize,
    pub regular_degree: Option<usize>,
    pub girth: Option<usize>,
    /// incidence p_i in H_jk recomputed from the tensor, rows H_12..H_45
    pub ozeki_incidence: Vec<Vec<bool>>,
    pub ozeki_matches_abstract: bool,
}

impl PetersenReport {
    pub fn passed(&self) -> bool {
        self.abstract_10_3_5_6 && self.vertices == 10 && self.edges == 15 && self.regular_degree == Some(3) && self.girth == Some(5) && self.ozeki_matches_abstract
    }
}

/// H_pq from the tensor: V = ker theta(e_pq, -) is a 3-space of V5 and
/// theta restricted to Lambda^2 V is a single linear form on V4.
pub fn hyperplane_form(theta: &ThetaTensor, e: &[Scalar]) -> Result<Vec<Scalar>> {
    let tag = theta.tag();
    let rows: Vec<Vec<Scalar>> = theta.components().iter().map(|c| c.contract_left(e)).collect();
    let v = ExactMatrix::from_rows(rows)?.kernel_basis();
    if v.len() != 3 {
        return Err(Error::Degenerate(format!("kernel of theta(e, -) has dimension {}", v.len())));
    }
    let images: Vec<Vec<Scalar>> = [(0, 1), (0, 2), (1, 2)].iter().map(|&(a, b)| theta.eval(&v[a], &v[b])).collect();
    let m = ExactMatrix::from_rows(images.clone())?;
    if m.rank() != 1 {
        return Err(Error::Degenerate(format!("theta on Lambda^2 V has rank {}", m.rank())));
    }
    let f = images.into_iter().find(|x| x.iter().any(|s| !s.is_zero())).expect("rank one");
    debug_assert!(f.iter().all(|s| s.tag() == tag));
    Ok(f)
}

pub fn petersen_and_1036(theta: &ThetaTensor, data: &OzekiData) -> Result<PetersenReport> {
    let abs = abstract_10_3_5_6();
    let adj = disjointness_graph();
    let degs: BTreeSet<usize> = adj.iter().map(Vec::len).collect();
    let mut inc = Vec::new();
    for (j, k) in all_pairs(5) {
        let f = hyperplane_form(theta, data.e_of(j + 1, k + 1))?;
        let mut row = Vec::new();
        for p in &data.points {
            let mut acc = Scalar::zero(theta.tag());
            for (a, b) in f.iter().zip(p) {
                acc = acc.try_add(&a.try_mul(b)?)?;
            }
            row.push(acc.is_zero());
        }
        inc.push(row);
    }
    Ok(PetersenReport {
        abstract_10_3_5_6: abs.has_parameters(10, 3, 5, 6),
        vertices: adj.len(),
        edges: adj.iter().map(Vec::len).sum::<usize>() / 2,
        regular_degree: if degs.len() == 1 { degs.into_iter().next() } else { None },
        girth: girth(&adj),
        ozeki_matches_abstract: inc == abs.incidence,
        ozeki_incidence: inc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matchings() {
        let ms = all_matchings();
        assert_eq!(ms.len(), 15);
        assert_eq!(ms[0].to_string(), "(12|34|56)");
        for a in &ms {
            for b in &ms {
                if a != b {
                    assert!(a.shared(b) <= 1);
                }
            }
        }
        assert!(Matching::parse("(12|34|55)").is_err());
    }

    #[test]
    fn pentads() {
        let r = pentad_report(7, 100).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.pentads[0], "(12|34|56) (13|25|46) (14|26|35) (15|24|36) (16|23|45)");
    }

    #[test]
    fn six_cycle_has_order_six() {
        let ps = enumerate_pentads();
        let img = pentad_action(&ps, &[1, 2, 3, 4, 5, 0]);
        let mut g = img.clone();
        let mut order = 1;
        while g != (0..6).collect::<Vec<_>>() {
            g = compose(&img, &g);
            order += 1;
        }
        assert_eq!(order, 6);
    }

    #[test]
    fn cremona_richmond_is_self_dual() {
        let r = cremona_richmond_report().unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn petersen() {
        let adj = disjointness_graph();
        assert_eq!(girth(&adj), Some(5));
        assert!(abstract_10_3_5_6().has_parameters(10, 3, 5, 6));
    }

    #[test]
    fn petersen_from_tensor() {
        let r = petersen_and_1036(&crate::models::ozeki_theta(), &crate::models::ozeki_data()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
