//! Properness and spatiality.
//!
//! A complex is spatial iff no two distinct `n`-cubes (`n >= 3`) agree on a
//! sub-complex of `∂□[n]` that carries a d-path from `0_n` to `1_n`
//! avoiding every other vertex of the cube. Membership of the agreement
//! locus in that class is decided by a reachability search on the grid
//! `(1/N)ℤ^n ∩ |A|`; positive answers come with an explicit PL path.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use crate::dpath::{self, rat, Breakpoint, PlDPath, Segment};
use crate::error::{Error, Result};
use crate::pcs::{boundary_subcomplex, standard_cube, CellRef, CellWord, Letter, PrecubicalSet};

/// Largest cube dimension examined by [`is_spatial`].
pub const MAX_SPATIAL_DIM: usize = 6;

/// Grid parameters tried by [`in_bn`] before a negative verdict.
pub const DEFAULT_GRIDS: [usize; 2] = [3, 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperVerdict {
    pub proper: bool,
    /// First two cells (canonical order) with the same extreme vertices.
    pub witness: Option<(CellRef, CellRef)>,
}

/// Whether `c ↦ (initial vertex, final vertex)` is injective over all cells.
pub fn is_proper(k: &PrecubicalSet) -> ProperVerdict {
    let mut seen: HashMap<(CellRef, CellRef), CellRef> = HashMap::new();
    for c in k.cells() {
        let key = (k.initial_vertex(c), k.final_vertex(c));
        if let Some(&first) = seen.get(&key) {
            return ProperVerdict { proper: false, witness: Some((first, c)) };
        }
        seen.insert(key, c);
    }
    ProperVerdict { proper: true, witness: None }
}

/// A face-closed set of cells of `∂□[n]`, as words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSubcomplex {
    pub n: usize,
    pub words: BTreeSet<CellWord>,
}

impl CubeSubcomplex {
    /// Face closure of the given boundary words.
    pub fn generated_by(n: usize, words: &[CellWord]) -> Result<Self> {
        let k = boundary_subcomplex(n, words)?;
        Ok(CubeSubcomplex { n, words: k.cells().map(|c| k.id(c).parse().expect("cube ids are words")).collect() })
    }

    /// All of `∂□[n]`.
    pub fn boundary(n: usize) -> Self {
        CubeSubcomplex { n, words: CellWord::all(n).into_iter().filter(|w| w.dim() < n).collect() }
    }

    pub fn contains(&self, w: &CellWord) -> bool {
        self.words.contains(w)
    }

    pub fn is_face_closed(&self) -> bool {
        self.words
            .iter()
            .all(|w| (1..=w.dim()).all(|i| (0..2u8).all(|eps| self.words.contains(&w.face(i, eps).expect("in range")))))
    }

    pub fn to_complex(&self) -> PrecubicalSet {
        let words: Vec<CellWord> = self.words.iter().cloned().collect();
        boundary_subcomplex(self.n, &words).expect("words are boundary cells")
    }
}

/// Cells of `∂□[n]` on which the characteristic maps of `c1` and `c2`
/// agree.
pub fn agreement(k: &PrecubicalSet, c1: CellRef, c2: CellRef) -> Result<CubeSubcomplex> {
    if c1.dim != c2.dim {
        return Err(Error::DimensionMismatch(c1.dim, c2.dim));
    }
    let n = c1.dim;
    let words =
        CellWord::all(n).into_iter().filter(|w| w.dim() < n && k.eval_word(c1, w) == k.eval_word(c2, w)).collect();
    Ok(CubeSubcomplex { n, words })
}

/// Evidence for a B_n verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BnCertificate {
    /// A natural PL d-path from `0_n` to `1_n` inside `|A|` meeting no other
    /// cube vertex, found on the given grid.
    Path { grid: usize, path: PlDPath },
    /// Reachability failed on every listed grid.
    Exhausted { grids: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reach {
    pub reachable: bool,
    pub certificate: BnCertificate,
}

fn carrier_word(point: &[usize], grid: usize) -> CellWord {
    CellWord::new(
        point
            .iter()
            .map(|&x| {
                if x == 0 {
                    Letter::Zero
                } else if x == grid {
                    Letter::One
                } else {
                    Letter::Free
                }
            })
            .collect(),
    )
}

/// Reachability from `0_n` to `1_n` on the grid of mesh `1/grid` inside
/// `|A|`, never stepping on another vertex of the cube.
pub fn vertex_avoiding_reach(a: &CubeSubcomplex, grid: usize) -> Result<Reach> {
    if grid < 2 {
        return Err(Error::GridTooSmall(grid));
    }
    let n = a.n;
    let negative = Reach { reachable: false, certificate: BnCertificate::Exhausted { grids: vec![grid] } };
    if n == 0 || !a.contains(&CellWord::zeros(n)) || !a.contains(&CellWord::ones(n)) {
        return Ok(negative);
    }
    let side = grid + 1;
    let total = side.checked_pow(n as u32).ok_or_else(|| Error::ResourceLimit("grid too large".into()))?;
    if total > 50_000_000 {
        return Err(Error::ResourceLimit(format!("grid with {total} points")));
    }
    let decode = |mut idx: usize| {
        let mut p = vec![0usize; n];
        for x in p.iter_mut() {
            *x = idx % side;
            idx /= side;
        }
        p
    };
    let stride: Vec<usize> = (0..n).map(|i| side.pow(i as u32)).collect();
    let is_cube_vertex = |p: &[usize]| p.iter().all(|&x| x == 0 || x == grid);
    let target = total - 1;
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([0usize]);
    parent.insert(0, 0);
    while let Some(cur) = queue.pop_front() {
        if cur == target {
            break;
        }
        let p = decode(cur);
        let base = carrier_word(&p, grid);
        for i in 0..n {
            if p[i] == grid {
                continue;
            }
            let mut letters = base.letters().to_vec();
            letters[i] = Letter::Free;
            if !a.contains(&CellWord::new(letters)) {
                continue;
            }
            let next = cur + stride[i];
            let mut q = p.clone();
            q[i] += 1;
            if next != target && is_cube_vertex(&q) {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(cur);
                queue.push_back(next);
            }
        }
    }
    if !parent.contains_key(&target) {
        return Ok(negative);
    }
    let mut route = vec![target];
    while *route.last().expect("nonempty") != 0 {
        route.push(parent[route.last().expect("nonempty")]);
    }
    route.reverse();
    let points: Vec<Vec<usize>> = route.into_iter().map(decode).collect();
    let path = grid_path_to_dpath(&points, grid);
    Ok(Reach { reachable: true, certificate: BnCertificate::Path { grid, path } })
}

/// Natural single-segment path in the top cell through the grid points,
/// with runs of steps along the same axis merged.
fn grid_path_to_dpath(points: &[Vec<usize>], grid: usize) -> PlDPath {
    let axis = |a: &[usize], b: &[usize]| a.iter().zip(b).position(|(x, y)| x != y);
    let mut kept: Vec<&Vec<usize>> = vec![&points[0]];
    for i in 1..points.len() {
        let last = i + 1 == points.len();
        if last || axis(&points[i - 1], &points[i]) != axis(&points[i], &points[i + 1]) {
            kept.push(&points[i]);
        }
    }
    let n = points[0].len();
    let to_rat = |x: usize| rat(x as i64, grid as i64);
    let bps = kept
        .into_iter()
        .map(|p| Breakpoint { time: to_rat(p.iter().sum()), coords: p.iter().map(|&x| to_rat(x)).collect() })
        .collect();
    PlDPath { segments: vec![Segment { cell: CellWord::top(n).to_string(), points: bps }] }
}

/// Checks a positive certificate: tame, natural, avoids the intermediate
/// vertices, and every linear piece lies in `|A|`.
pub fn verify_certificate(a: &CubeSubcomplex, path: &PlDPath) -> bool {
    let cube = standard_cube(a.n);
    if !dpath::is_tame_dpath(&cube, path) || !dpath::is_natural(path) {
        return false;
    }
    let Ok(nat) = dpath::naturalize(&cube, path) else { return false };
    if nat != *path || dpath::hits_intermediate_vertex(path, a.n).unwrap_or(true) {
        return false;
    }
    let starts_right = path.initial_vertex(&cube).is_ok_and(|v| cube.id(v) == CellWord::zeros(a.n).to_string());
    let ends_right = path.final_vertex(&cube).is_ok_and(|v| cube.id(v) == CellWord::ones(a.n).to_string());
    if !starts_right || !ends_right {
        return false;
    }
    path.segments.iter().all(|seg| {
        let Ok(word) = seg.cell.parse::<CellWord>() else { return false };
        seg.points.windows(2).all(|w| {
            let p = dpath::ambient_coords(&word, &w[0].coords);
            let q = dpath::ambient_coords(&word, &w[1].coords);
            let piece = CellWord::new(
                p.iter()
                    .zip(&q)
                    .map(|(x, y)| {
                        if x == y && x.is_zero() {
                            Letter::Zero
                        } else if x == y && x.is_one() {
                            Letter::One
                        } else {
                            Letter::Free
                        }
                    })
                    .collect(),
            );
            a.contains(&piece)
        })
    })
}

/// Membership in B_n: false for `n <= 2`, otherwise grid reachability on
/// [`DEFAULT_GRIDS`].
pub fn in_bn(a: &CubeSubcomplex) -> Result<Reach> {
    in_bn_with(a, &DEFAULT_GRIDS)
}

/// [`in_bn`] with an explicit escalation sequence of grid parameters.
pub fn in_bn_with(a: &CubeSubcomplex, grids: &[usize]) -> Result<Reach> {
    if a.n <= 2 {
        return Ok(Reach { reachable: false, certificate: BnCertificate::Exhausted { grids: Vec::new() } });
    }
    for &g in grids {
        let r = vertex_avoiding_reach(a, g)?;
        if r.reachable {
            return Ok(r);
        }
    }
    Ok(Reach { reachable: false, certificate: BnCertificate::Exhausted { grids: grids.to_vec() } })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpatialVerdict {
    Spatial,
    NotSpatial,
    /// No defect found, but some cube dimension above the cap was skipped.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialDefect {
    pub dim: usize,
    pub first: CellRef,
    pub second: CellRef,
    pub grid: usize,
    pub certificate: PlDPath,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialReport {
    pub verdict: SpatialVerdict,
    pub defects: Vec<SpatialDefect>,
    pub skipped_dims: Vec<usize>,
}

/// Decides spatiality with the default grid escalation.
pub fn is_spatial(k: &PrecubicalSet) -> Result<SpatialReport> {
    is_spatial_with(k, &DEFAULT_GRIDS)
}

pub fn is_spatial_with(k: &PrecubicalSet, grids: &[usize]) -> Result<SpatialReport> {
    let mut defects = Vec::new();
    let mut skipped_dims = Vec::new();
    let top = k.max_dim().unwrap_or(0);
    for n in 3..=top {
        // only cubes with the same extreme vertices can agree on a set
        // containing both of them
        let mut groups: HashMap<(CellRef, CellRef), Vec<CellRef>> = HashMap::new();
        for c in k.cells_of_dim(n) {
            groups.entry((k.initial_vertex(c), k.final_vertex(c))).or_default().push(c);
        }
        let mut groups: Vec<Vec<CellRef>> = groups.into_values().filter(|g| g.len() >= 2).collect();
        if groups.is_empty() {
            continue;
        }
        if n > MAX_SPATIAL_DIM {
            skipped_dims.push(n);
            continue;
        }
        groups.sort();
        for g in &groups {
            for (i, &c1) in g.iter().enumerate() {
                for &c2 in &g[i + 1..] {
                    let a = agreement(k, c1, c2)?;
                    let r = in_bn_with(&a, grids)?;
                    if let BnCertificate::Path { grid, path } = r.certificate {
                        defects.push(SpatialDefect { dim: n, first: c1, second: c2, grid, certificate: path });
                    }
                }
            }
        }
    }
    defects.sort_by_key(|d| (d.dim, d.first, d.second));
    let verdict = if !defects.is_empty() {
        SpatialVerdict::NotSpatial
    } else if !skipped_dims.is_empty() {
        SpatialVerdict::Undecided
    } else {
        SpatialVerdict::Spatial
    };
    Ok(SpatialReport { verdict, defects, skipped_dims })
}

/// All defects found by [`is_spatial`], in canonical order.
pub fn spatial_defects(k: &PrecubicalSet) -> Result<Vec<SpatialDefect>> {
    Ok(is_spatial(k)?.defects)
}

impl fmt::Display for SpatialVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpatialVerdict::Spatial => "yes",
            SpatialVerdict::NotSpatial => "no",
            SpatialVerdict::Undecided => "undecided (dimension cap)",
        })
    }
}

/// The `spatial` report.
pub fn spatial_report(k: &PrecubicalSet, report: &SpatialReport) -> String {
    let mut out = format!("spatial: {}\n", report.verdict);
    for d in &report.skipped_dims {
        out.push_str(&format!("skipped dim {d} (cap {MAX_SPATIAL_DIM})\n"));
    }
    out.push_str(&format!("defects = {}\n", report.defects.len()));
    for d in &report.defects {
        out.push_str(&format!("defect dim {} : {} {} grid {}\n", d.dim, k.id(d.first), k.id(d.second), d.grid));
        out.push_str(&d.certificate.to_string());
        out.push_str("end\n");
    }
    out
}

/// The `proper` report.
pub fn proper_report(k: &PrecubicalSet, verdict: &ProperVerdict) -> String {
    match verdict.witness {
        None => "proper: yes\n".to_string(),
        Some((a, b)) => format!(
            "proper: no\ncollision {} {} : {} -> {}\n",
            k.id(a),
            k.id(b),
            k.id(k.initial_vertex(a)),
            k.id(k.final_vertex(a))
        ),
    }
}
