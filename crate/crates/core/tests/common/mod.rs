#![allow(dead_code)]

use cubepath::chains::CubeChain;
use cubepath::dpath::{rat, Breakpoint, PlDPath, Rational, Segment};
use cubepath::pcs::{
    amalgam, boundary_cube, chain_cube, loop_complex, skeleton, standard_cube, tensor, CellWord, Letter,
};
use cubepath::pv::{compile_pv, parse_pv};
use cubepath::spatial::CubeSubcomplex;
use cubepath::{CellRef, PrecubicalSet};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub const SWISS_FLAG: &str = "pv v1\nsem a 1\nsem b 1\nproc X: Pa Pb Vb Va\nproc Y: Pb Pa Va Vb\n";

pub fn words(ws: &[&str]) -> Vec<CellWord> {
    ws.iter().map(|w| w.parse().unwrap()).collect()
}

fn glued(n: usize, along: &[&str]) -> PrecubicalSet {
    let a = CubeSubcomplex::generated_by(n, &words(along)).unwrap().to_complex();
    amalgam(n, &a).unwrap().0
}

fn compiled(text: &str) -> PrecubicalSet {
    compile_pv(&parse_pv(text).unwrap()).unwrap().complex
}

/// Named complexes exercised by the whole-corpus checks.
pub fn corpus() -> Vec<(String, PrecubicalSet)> {
    let mut out: Vec<(String, PrecubicalSet)> = Vec::new();
    for n in 0..=5 {
        out.push((format!("cube{n}"), standard_cube(n)));
    }
    for n in 1..=5 {
        out.push((format!("boundary{n}"), boundary_cube(n)));
    }
    out.push(("skeleton1_cube3".into(), skeleton(&standard_cube(3), 1)));
    out.push(("skeleton2_cube4".into(), skeleton(&standard_cube(4), 2)));
    out.push(("chain_1_1".into(), chain_cube(&[1, 1]).unwrap()));
    out.push(("chain_2_1_3".into(), chain_cube(&[2, 1, 3]).unwrap()));
    out.push(("loop".into(), loop_complex()));
    out.push(("loop_x_edge".into(), tensor(&loop_complex(), &standard_cube(1))));
    out.push(("loop_x_loop".into(), tensor(&loop_complex(), &loop_complex())));
    out.push(("square_x_edge".into(), tensor(&standard_cube(2), &standard_cube(1))));
    out.push(("amalgam3".into(), amalgam(3, &boundary_cube(3)).unwrap().0));
    out.push(("amalgam4".into(), amalgam(4, &boundary_cube(4)).unwrap().0));
    out.push(("amalgam2".into(), amalgam(2, &boundary_cube(2)).unwrap().0));
    out.push(("amalgam3_ends".into(), glued(3, &["000", "111"])));
    out.push(("amalgam3_two_faces".into(), glued(3, &["**0", "1**"])));
    out.push(("amalgam3_opposite".into(), glued(3, &["**0", "**1"])));
    out.push(("amalgam3_edges".into(), glued(3, &["*00", "1*0", "11*"])));
    out.push(("swiss_flag".into(), compiled(SWISS_FLAG)));
    out.push(("three_mutex".into(), compiled("pv v1\nsem m 1\nproc A: Pm Vm\nproc B: Pm Vm\nproc C: Pm Vm\n")));
    out.push(("two_slots".into(), compiled("pv v1\nsem s 2\nproc A: Ps Vs\nproc B: Ps Vs\nproc C: Ps Vs\n")));
    out.push((
        "nested_locks".into(),
        compiled("pv v1\nsem a 1\nsem b 1\nproc X: Pa Pb Vb Va Pb Vb\nproc Y: Pb Vb Pa Va\n"),
    ));
    out
}

/// [`corpus`], built once per test binary.
pub fn shared_corpus() -> &'static [(String, PrecubicalSet)] {
    static CORPUS: std::sync::OnceLock<Vec<(String, PrecubicalSet)>> = std::sync::OnceLock::new();
    CORPUS.get_or_init(corpus)
}

/// A random precubical set of dimension at most 2, valid by construction.
pub fn random_complex_2d(rng: &mut impl Rng) -> PrecubicalSet {
    let nv = rng.gen_range(1..=6);
    let mut cells: Vec<(String, usize, Vec<String>)> = (0..nv).map(|i| (format!("v{i}"), 0, Vec::new())).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..rng.gen_range(0..=10) {
        edges.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    let mut squares: Vec<[usize; 4]> = Vec::new();
    if !edges.is_empty() {
        for _ in 0..rng.gen_range(0..=6) {
            // ∂_2^0 = bottom : v00 -> v10
            let bottom = rng.gen_range(0..edges.len());
            let (v00, v10) = edges[bottom];
            let pick_from = |edges: &mut Vec<(usize, usize)>, from: usize, rng: &mut dyn rand::RngCore| {
                let outs: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].0 == from).collect();
                match outs.choose(rng) {
                    Some(&e) if rng.gen_bool(0.7) => e,
                    _ => {
                        edges.push((from, rng.gen_range(0..nv)));
                        edges.len() - 1
                    }
                }
            };
            let left = pick_from(&mut edges, v00, rng);
            let right = pick_from(&mut edges, v10, rng);
            let (v01, v11) = (edges[left].1, edges[right].1);
            let tops: Vec<usize> = (0..edges.len()).filter(|&e| edges[e] == (v01, v11)).collect();
            let top = match tops.choose(rng) {
                Some(&e) => e,
                None => {
                    edges.push((v01, v11));
                    edges.len() - 1
                }
            };
            squares.push([left, right, bottom, top]);
        }
    }
    for (i, &(s, t)) in edges.iter().enumerate() {
        cells.push((format!("e{i}"), 1, vec![format!("v{s}"), format!("v{t}")]));
    }
    for (i, sq) in squares.iter().enumerate() {
        cells.push((format!("s{i}"), 2, sq.iter().map(|e| format!("e{e}")).collect()));
    }
    PrecubicalSet::from_cells(cells).expect("generated complex is valid")
}

fn random_unit(rng: &mut impl Rng) -> Rational {
    let d = rng.gen_range(1..=6i64);
    rat(rng.gen_range(0..=d), d)
}

/// Monotone breakpoints in `[0,1]^d` from `0` to `1` with no two
/// consecutive points equal.
fn random_monotone_points(d: usize, rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    let m = rng.gen_range(0..=3);
    let mut columns: Vec<Vec<Rational>> = (0..d)
        .map(|_| {
            let mut c: Vec<Rational> = (0..m).map(|_| random_unit(rng)).collect();
            c.sort();
            c
        })
        .collect();
    let mut pts = vec![vec![Rational::zero(); d]];
    for j in 0..m {
        pts.push(columns.iter_mut().map(|c| c[j].clone()).collect());
    }
    pts.push(vec![Rational::one(); d]);
    pts.dedup();
    pts
}

/// A random tame d-path starting at `start` with at most `max_segments`
/// segments, or `None` if no cell starts there.
pub fn random_tame_path(k: &PrecubicalSet, start: CellRef, max_segments: usize, rng: &mut impl Rng) -> Option<PlDPath> {
    let mut at = start;
    let mut clock = Rational::zero();
    let mut segments = Vec::new();
    let target = rng.gen_range(1..=max_segments);
    while segments.len() < target {
        let outs: Vec<CellRef> = k.cells().filter(|&c| c.dim > 0 && k.initial_vertex(c) == at).collect();
        let Some(&c) = outs.choose(rng) else { break };
        let pts = random_monotone_points(c.dim, rng);
        let mut points = Vec::with_capacity(pts.len());
        for (i, coords) in pts.into_iter().enumerate() {
            if i > 0 {
                clock += rat(rng.gen_range(1..=4), rng.gen_range(1..=3));
            }
            points.push(Breakpoint { time: clock.clone(), coords });
        }
        segments.push(Segment { cell: k.id(c).to_string(), points });
        at = k.final_vertex(c);
    }
    (!segments.is_empty()).then_some(PlDPath { segments })
}

/// Vertices with at least one cell leaving them.
pub fn path_starts(k: &PrecubicalSet) -> Vec<CellRef> {
    let mut v: Vec<CellRef> = k.cells().filter(|c| c.dim > 0).map(|c| k.initial_vertex(c)).collect();
    v.sort();
    v.dedup();
    v
}

pub fn chain_ids(k: &PrecubicalSet, chains: &[CubeChain]) -> Vec<String> {
    chains.iter().map(|c| c.display(k)).collect()
}

/// Every face-closed subset of `∂□[n]` as word sets, built by choosing the
/// top-dimensional members first.
pub fn face_closed_subsets(n: usize) -> Vec<Vec<CellWord>> {
    let by_dim: Vec<Vec<CellWord>> =
        (0..n).map(|d| CellWord::all(n).into_iter().filter(|w| w.dim() == d).collect()).collect();
    let mut out = Vec::new();
    fn go(by_dim: &[Vec<CellWord>], d: usize, chosen: Vec<CellWord>, out: &mut Vec<Vec<CellWord>>) {
        // cells of dimension d forced by the chosen higher cells
        let forced: Vec<&CellWord> =
            by_dim[d].iter().filter(|w| chosen.iter().any(|c| c.dim() > d && w.is_face_of(c))).collect();
        let free: Vec<&CellWord> = by_dim[d].iter().filter(|w| !forced.contains(w)).collect();
        for mask in 0u64..(1 << free.len()) {
            let mut next = chosen.clone();
            next.extend(forced.iter().map(|w| (*w).clone()));
            next.extend(free.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, w)| (*w).clone()));
            if d == 0 {
                out.push(next);
            } else {
                go(by_dim, d - 1, next, out);
            }
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    go(&by_dim, n - 1, Vec::new(), &mut out);
    out
}

/// Letters of a word as a string of `0`, `1`, `*`.
pub fn word_str(w: &CellWord) -> String {
    w.letters()
        .iter()
        .map(|l| match l {
            Letter::Zero => '0',
            Letter::One => '1',
            Letter::Free => '*',
        })
        .collect()
}
