//! Nerves of chain categories and their integral homology.
//!
//! Non-identity morphisms of a chain category strictly shorten chains, so
//! no composite of non-identity morphisms is an identity: the normalized
//! chain complex of the nerve is spanned by all strings of composable
//! non-identity morphisms and no face ever degenerates.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::chains::ChainCategory;
use crate::snf::{sparse_invariant_factors, SparseMatrix};

/// Dimension cap for nerves built with the default bound.
pub const MAX_NERVE_DIM: usize = 8;

/// Non-degenerate simplices of a nerve, per dimension. A 0-simplex is
/// `[object]`, a `k`-simplex for `k >= 1` is a string of `k` composable
/// morphism indices.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// Set when simplices above the last dimension were not generated.
    pub truncated: bool,
    pub warnings: Vec<String>,
}

impl NerveComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn top_dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// `Σ (-1)^k #k-simplices`.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }
}

/// Nerve up to dimension `max_dim`; `None` means "as far as it goes",
/// capped at [`MAX_NERVE_DIM`] with a warning.
pub fn nerve(c: &ChainCategory, max_dim: Option<usize>) -> NerveComplex {
    let (limit, capped) = match max_dim {
        Some(d) => (d, false),
        None => (MAX_NERVE_DIM, true),
    };
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    if c.objects.is_empty() {
        return NerveComplex { simplices, truncated: false, warnings: Vec::new() };
    }
    simplices.push((0..c.objects.len()).map(|o| vec![o]).collect());
    if limit >= 1 && !c.morphisms.is_empty() {
        simplices.push((0..c.morphisms.len()).map(|m| vec![m]).collect());
    }
    while simplices.len() <= limit && simplices.len() >= 2 {
        let last = simplices.last().expect("nonempty");
        let next: Vec<Vec<usize>> = last
            .iter()
            .flat_map(|s| {
                let end = c.morphisms[*s.last().expect("nonempty string")].target;
                c.outgoing(end).iter().map(move |&g| {
                    let mut t = s.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        simplices.push(next);
    }
    let mut truncated = false;
    let mut warnings = Vec::new();
    if simplices.len() == limit + 1 && limit >= 1 && simplices.len() >= 2 {
        // is there anything beyond?
        let beyond =
            simplices[limit].iter().any(|s| !c.outgoing(c.morphisms[*s.last().expect("nonempty")].target).is_empty());
        if beyond {
            truncated = true;
            if capped {
                warnings.push(format!("nerve truncated at dimension {MAX_NERVE_DIM}"));
            }
        }
    }
    NerveComplex { simplices, truncated, warnings }
}

/// Faces `d_0, ..., d_k` of a `k`-simplex (`k >= 1`) as keys into the
/// `(k-1)`-simplices.
fn faces(c: &ChainCategory, s: &[usize]) -> Vec<Vec<usize>> {
    let k = s.len();
    if k == 1 {
        let m = &c.morphisms[s[0]];
        return vec![vec![m.target], vec![m.source]];
    }
    let mut out = Vec::with_capacity(k + 1);
    out.push(s[1..].to_vec());
    for i in 1..k {
        let mut t = Vec::with_capacity(k - 1);
        t.extend_from_slice(&s[..i - 1]);
        t.push(c.compose(s[i - 1], s[i]).expect("composable strings compose"));
        t.extend_from_slice(&s[i + 1..]);
        out.push(t);
    }
    out.push(s[..k - 1].to_vec());
    out
}

/// Boundary matrices `∂_k : C_k -> C_{k-1}` for `k = 1..=top`.
pub fn boundary_matrices(c: &ChainCategory, n: &NerveComplex) -> Vec<SparseMatrix> {
    let mut out = Vec::new();
    for k in 1..n.simplices.len() {
        let index: HashMap<&[usize], usize> =
            n.simplices[k - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut m = SparseMatrix::new(n.simplices[k - 1].len(), n.simplices[k].len());
        for (j, s) in n.simplices[k].iter().enumerate() {
            for (i, f) in faces(c, s).into_iter().enumerate() {
                let row = index[f.as_slice()];
                m.push(row, j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        out.push(m);
    }
    out
}

/// Checks `∂_k ∂_{k+1} = 0` for all `k`.
pub fn boundary_squares_to_zero(mats: &[SparseMatrix]) -> bool {
    mats.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for &(i, j, v) in &b.entries {
            by_row.entry(i).or_default().push((j, v));
        }
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for &(i, k, v) in &a.entries {
            for &(j, w) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                *acc.entry((i, j)).or_default() += v * w;
            }
        }
        acc.values().all(|&v| v == 0)
    })
}

/// Betti numbers, torsion coefficients and Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    pub euler: i64,
}

impl HomologySummary {
    /// Betti numbers with trailing zeros removed.
    pub fn betti_trimmed(&self) -> &[usize] {
        let end = self.betti.iter().rposition(|&b| b != 0).map_or(0, |p| p + 1);
        &self.betti[..end]
    }

    pub fn is_point(&self) -> bool {
        self.betti_trimmed() == [1] && self.torsion.iter().all(Vec::is_empty)
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.betti.iter().enumerate() {
            write!(f, "H_{k} = Z^{b}")?;
            for d in &self.torsion[k] {
                write!(f, " + Z/{d}")?;
            }
            writeln!(f)?;
        }
        write!(f, "chi = {}", self.euler)
    }
}

/// Homology of the nerve in degrees `0..=up_to` (clamped to what the
/// nerve determines: the top generated degree is exact only when the nerve
/// was not truncated).
pub fn homology(c: &ChainCategory, n: &NerveComplex, up_to: usize) -> HomologySummary {
    let mats = boundary_matrices(c, n);
    debug_assert!(boundary_squares_to_zero(&mats));
    let factors: Vec<Vec<BigInt>> = mats.iter().map(sparse_invariant_factors).collect();
    let counts = n.counts();
    let top = if n.truncated { counts.len().saturating_sub(2) } else { counts.len().saturating_sub(1) };
    let last = up_to.min(top);
    let rank = |k: usize| -> usize {
        // rank of ∂_k, k >= 1
        if k == 0 || k > factors.len() {
            0
        } else {
            factors[k - 1].len()
        }
    };
    let mut betti = Vec::new();
    let mut torsion = Vec::new();
    if !counts.is_empty() {
        for k in 0..=last {
            betti.push(counts[k] - rank(k) - rank(k + 1));
            torsion.push(if k < factors.len() {
                factors[k].iter().filter(|d| !d.is_one()).cloned().collect()
            } else {
                Vec::new()
            });
        }
    }
    HomologySummary { betti, torsion, euler: n.euler_characteristic() }
}

/// Connected components of the category (zigzags of morphisms), as sorted
/// lists of object indices ordered by their smallest member.
pub fn pi0(c: &ChainCategory) -> Vec<Vec<usize>> {
    let n = c.objects.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for m in &c.morphisms {
        let (a, b) = (find(&mut parent, m.source), find(&mut parent, m.target));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for o in 0..n {
        let r = find(&mut parent, o);
        groups.entry(r).or_default().push(o);
    }
    groups.into_values().collect()
}
