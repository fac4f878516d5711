//! The S6 action on the six pentads, and the S5 types of Pic and A^2 of X4.

use std::collections::BTreeSet;

use serde::Serialize;

use super::sn::{cycle_type, s5_decompose, SnCharacter};
use crate::chow::table::SquareMapReport;
use crate::configurations::{pentad_action, Pentad};
use crate::error::Result;

/// All permutations of {0..n-1}, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

fn is_transposition(g: &[usize]) -> bool {
    cycle_type(g) == [2, 1, 1, 1, 1]
}

#[derive(Clone, Debug, Serialize)]
pub struct OuterReport {
    pub bijective: bool,
    /// image of (12) in cycle notation on A..F
    pub image_of_12: String,
    pub transpositions_to_triple: bool,
    pub stabilizer_orders: Vec<usize>,
    pub stabilizers_without_transpositions: bool,
}

impl OuterReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.transpositions_to_triple && self.stabilizer_orders.iter().all(|&o| o == 120) && self.stabilizers_without_transpositions
    }
}

fn cycles(g: &[usize], names: &[char]) -> String {
    let mut seen = vec![false; g.len()];
    let mut s = String::new();
    for i in 0..g.len() {
        if seen[i] || g[i] == i {
            continue;
        }
        s.push('(');
        let mut x = i;
        while !seen[x] {
            seen[x] = true;
            s.push(names[x]);
            x = g[x];
        }
        s.push(')');
    }
    if s.is_empty() {
        "()".into()
    } else {
        s
    }
}

pub fn s6_outer_check(pentads: &[Pentad]) -> OuterReport {
    let all = permutations(6);
    let images: Vec<Vec<usize>> = all.iter().map(|g| pentad_action(pentads, g)).collect();
    let distinct: BTreeSet<&Vec<usize>> = images.iter().collect();
    let names = ['A', 'B', 'C', 'D', 'E', 'F'];
    let t12 = pentad_action(pentads, &[1, 0, 2, 3, 4, 5]);
    let triple = all.iter().zip(&images).filter(|(g, _)| is_transposition(g)).all(|(_, h)| cycle_type(h) == [2, 2, 2]);
    let mut orders = Vec::new();
    let mut clean = true;
    for p in 0..pentads.len() {
        let stab: Vec<&Vec<usize>> = all.iter().zip(&images).filter(|(_, h)| h[p] == p).map(|(g, _)| g).collect();
        orders.push(stab.len());
        clean &= !stab.iter().any(|g| is_transposition(g));
    }
    OuterReport {
        bijective: distinct.len() == all.len(),
        image_of_12: cycles(&t12, &names),
        transpositions_to_triple: triple,
        stabilizer_orders: orders,
        stabilizers_without_transpositions: clean,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PicChowTypes {
    pub permutation_on_five: String,
    pub pic_type: String,
    pub image_type: String,
    pub image_dim: usize,
}

/// Pic = <H1, H2> + <F_1..F_5>; S5 permutes the F_p.
pub fn pic_and_chow_types(square: &SquareMapReport) -> Result<PicChowTypes> {
    let nat = SnCharacter::natural(5);
    let pic = SnCharacter::trivial(5).add(&nat);
    Ok(PicChowTypes {
        permutation_on_five: s5_decompose(&nat)?.to_string(),
        pic_type: s5_decompose(&pic)?.to_string(),
        image_type: square.image_type.clone(),
        image_dim: square.gram_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configurations::enumerate_pentads;

    #[test]
    fn outer() {
        let r = s6_outer_check(&enumerate_pentads());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.image_of_12.matches('(').count(), 3);
        assert_eq!(permutations(6).len(), 720);
    }

    #[test]
    fn pic_is_trivial_plus_permutation() {
        let sq = crate::chow::k3_and_square_map(&crate::chow::printed_table()).unwrap();
        let t = pic_and_chow_types(&sq).unwrap();
        assert_eq!(t.pic_type, "2U1 + U4");
        assert_eq!(t.image_dim, 17);
    }
}
