//! Piecewise-linear tame d-paths in the geometric realization.
//!
//! A path is a list of segments; each segment lives in one cell of `K` and
//! is given by breakpoints `(t, x)` joined linearly, where `x` are the
//! cell coordinates. Times are global: the path is defined on `[0, ℓ]`.
//! All arithmetic is exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pcs::{CellRef, CellWord, Letter, PrecubicalSet};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (BigInt::from_str(n).ok()?, BigInt::from_str(d).ok()?),
        None => (BigInt::from_str(s).ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn is_bit(x: &Rational) -> Option<u8> {
    if x.is_zero() {
        Some(0)
    } else if x.is_one() {
        Some(1)
    } else {
        None
    }
}

/// A point `[c; x]` of the realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub cell: CellRef,
    pub coords: Vec<Rational>,
}

/// Pushes every coordinate equal to 0 or 1 into the corresponding face,
/// giving the unique presentation with interior coordinates.
pub fn canonicalize(k: &PrecubicalSet, p: &Point) -> Result<Point> {
    if p.coords.len() != p.cell.dim {
        return Err(Error::DimensionMismatch(p.coords.len(), p.cell.dim));
    }
    if p.coords.iter().any(|x| *x < Rational::zero() || *x > Rational::one()) {
        return Err(Error::MalformedPath(format!("coordinates of a point in `{}` leave [0,1]", k.id(p.cell))));
    }
    let assignment: Vec<(usize, u8)> =
        p.coords.iter().enumerate().filter_map(|(i, x)| is_bit(x).map(|b| (i + 1, b))).collect();
    let cell = k.face_assign(p.cell, &assignment)?;
    let coords = p.coords.iter().filter(|x| is_bit(x).is_none()).cloned().collect();
    Ok(Point { cell, coords })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakpoint {
    pub time: Rational,
    pub coords: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub cell: String,
    pub points: Vec<Breakpoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlDPath {
    pub segments: Vec<Segment>,
}

/// The cells traversed by a tame path, one per vertex-to-vertex piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier(pub Vec<(String, usize)>);

impl PlDPath {
    pub fn start_time(&self) -> Option<&Rational> {
        self.segments.first()?.points.first().map(|p| &p.time)
    }

    pub fn end_time(&self) -> Option<&Rational> {
        self.segments.last()?.points.last().map(|p| &p.time)
    }

    /// Length `ℓ` of the time domain.
    pub fn length(&self) -> Rational {
        match (self.start_time(), self.end_time()) {
            (Some(a), Some(b)) => b - a,
            _ => Rational::zero(),
        }
    }

    fn resolved(&self, k: &PrecubicalSet) -> Result<Vec<CellRef>> {
        self.segments.iter().map(|s| k.try_cell(&s.cell)).collect()
    }

    /// Vertex at which the path starts.
    pub fn initial_vertex(&self, k: &PrecubicalSet) -> Result<CellRef> {
        let seg = self.segments.first().ok_or_else(|| Error::MalformedPath("empty path".into()))?;
        endpoint_vertex(k, seg, seg.points.first())
    }

    /// Vertex at which the path ends.
    pub fn final_vertex(&self, k: &PrecubicalSet) -> Result<CellRef> {
        let seg = self.segments.last().ok_or_else(|| Error::MalformedPath("empty path".into()))?;
        endpoint_vertex(k, seg, seg.points.last())
    }
}

fn endpoint_vertex(k: &PrecubicalSet, seg: &Segment, p: Option<&Breakpoint>) -> Result<CellRef> {
    let p = p.ok_or_else(|| Error::MalformedPath(format!("segment in `{}` has no points", seg.cell)))?;
    let cell = k.try_cell(&seg.cell)?;
    let q = canonicalize(k, &Point { cell, coords: p.coords.clone() })?;
    if q.cell.dim != 0 {
        return Err(Error::MalformedPath(format!("segment in `{}` does not end at a vertex", seg.cell)));
    }
    Ok(q.cell)
}

fn coord_sum(x: &[Rational]) -> Rational {
    x.iter().fold(Rational::zero(), |acc, v| acc + v)
}

/// Tame d-path check: every segment is well formed, monotone in every
/// coordinate, nonconstant, starts and ends at vertices, and consecutive
/// segments meet at the same vertex and time. The path starts at time 0.
pub fn is_tame_dpath(k: &PrecubicalSet, path: &PlDPath) -> bool {
    check_tame(k, path).is_ok()
}

/// Like [`is_tame_dpath`] but reports the first problem.
pub fn check_tame(k: &PrecubicalSet, path: &PlDPath) -> Result<()> {
    let bad = |m: String| Err(Error::MalformedPath(m));
    if path.segments.is_empty() {
        return bad("empty path".into());
    }
    if !path.start_time().is_some_and(Zero::is_zero) {
        return bad("path does not start at time 0".into());
    }
    let cells = path.resolved(k)?;
    for (idx, (seg, &cell)) in path.segments.iter().zip(&cells).enumerate() {
        if seg.points.len() < 2 {
            return bad(format!("segment {idx} has fewer than two points"));
        }
        for p in &seg.points {
            if p.coords.len() != cell.dim {
                return bad(format!("segment {idx}: point has {} coordinates, cell has {}", p.coords.len(), cell.dim));
            }
            if p.coords.iter().any(|x| *x < Rational::zero() || *x > Rational::one()) {
                return bad(format!("segment {idx}: coordinate outside [0,1]"));
            }
        }
        for w in seg.points.windows(2) {
            if w[1].time < w[0].time {
                return bad(format!("segment {idx}: time decreases"));
            }
            if w[0].coords.iter().zip(&w[1].coords).any(|(a, b)| b < a) {
                return bad(format!("segment {idx}: a coordinate decreases"));
            }
            if w[1].time == w[0].time && w[1].coords != w[0].coords {
                return bad(format!("segment {idx}: jump at constant time"));
            }
        }
        let (first, last) = (&seg.points[0], &seg.points[seg.points.len() - 1]);
        if first.coords == last.coords {
            return bad(format!("segment {idx} is constant"));
        }
        endpoint_vertex(k, seg, Some(first))?;
        endpoint_vertex(k, seg, Some(last))?;
    }
    for (idx, w) in path.segments.windows(2).enumerate() {
        let end = endpoint_vertex(k, &w[0], w[0].points.last())?;
        let start = endpoint_vertex(k, &w[1], w[1].points.first())?;
        if end != start {
            return bad(format!("segments {idx} and {} do not meet", idx + 1));
        }
        if w[0].points.last().map(|p| &p.time) != w[1].points.first().map(|p| &p.time) {
            return bad(format!("segments {idx} and {} do not meet in time", idx + 1));
        }
    }
    Ok(())
}

/// Natural parametrization: inside every segment the elapsed time equals
/// the increase of the coordinate sum.
pub fn is_natural(path: &PlDPath) -> bool {
    path.segments.iter().all(|seg| {
        let Some(first) = seg.points.first() else { return false };
        let base = coord_sum(&first.coords);
        seg.points.iter().all(|p| &p.time - &first.time == coord_sum(&p.coords) - &base)
    })
}

/// Reparametrizes every segment by L1 arc length. Stalling pieces (two
/// consecutive equal breakpoints) are rejected.
pub fn naturalize(k: &PrecubicalSet, path: &PlDPath) -> Result<PlDPath> {
    check_tame(k, path)?;
    let mut clock = Rational::zero();
    let mut segments = Vec::with_capacity(path.segments.len());
    for (idx, seg) in path.segments.iter().enumerate() {
        if seg.points.windows(2).any(|w| w[0].coords == w[1].coords) {
            return Err(Error::Stalling { segment: idx });
        }
        let base = coord_sum(&seg.points[0].coords);
        let start = clock.clone();
        let points: Vec<Breakpoint> = seg
            .points
            .iter()
            .map(|p| Breakpoint { time: &start + coord_sum(&p.coords) - &base, coords: p.coords.clone() })
            .collect();
        clock = points.last().expect("at least two points").time.clone();
        segments.push(Segment { cell: seg.cell.clone(), points });
    }
    Ok(PlDPath { segments })
}

/// Moore composition: `b` runs after `a`, shifted by the length of `a`.
pub fn moore_compose(k: &PrecubicalSet, a: &PlDPath, b: &PlDPath) -> Result<PlDPath> {
    let (end, start) = (a.final_vertex(k)?, b.initial_vertex(k)?);
    if end != start {
        return Err(Error::EndpointMismatch { left: k.id(end).into(), right: k.id(start).into() });
    }
    let shift =
        a.end_time().cloned().unwrap_or_else(Rational::zero) - b.start_time().cloned().unwrap_or_else(Rational::zero);
    let mut segments = a.segments.clone();
    segments.extend(b.segments.iter().map(|s| Segment {
        cell: s.cell.clone(),
        points: s.points.iter().map(|p| Breakpoint { time: &p.time + &shift, coords: p.coords.clone() }).collect(),
    }));
    Ok(PlDPath { segments })
}

/// Splits every segment at interior breakpoints lying on vertices and
/// assigns each piece its smallest carrier cell.
pub fn carrier_of(k: &PrecubicalSet, path: &PlDPath) -> Result<Carrier> {
    check_tame(k, path)?;
    let mut out = Vec::new();
    for seg in &path.segments {
        let cell = k.try_cell(&seg.cell)?;
        let mut start = 0;
        for i in 1..seg.points.len() {
            let at_vertex = seg.points[i].coords.iter().all(|x| is_bit(x).is_some());
            if at_vertex || i + 1 == seg.points.len() {
                let piece = &seg.points[start..=i];
                if piece.first().map(|p| &p.coords) != piece.last().map(|p| &p.coords) {
                    let c = minimal_cell(k, cell, piece)?;
                    out.push((k.id(c).to_string(), c.dim));
                }
                start = i;
            }
        }
    }
    Ok(Carrier(out))
}

/// Smallest face of `cell` containing all the breakpoints.
fn minimal_cell(k: &PrecubicalSet, cell: CellRef, points: &[Breakpoint]) -> Result<CellRef> {
    let first = &points[0].coords;
    let assignment: Vec<(usize, u8)> = (0..cell.dim)
        .filter_map(|i| {
            let b = is_bit(&first[i])?;
            points.iter().all(|p| p.coords[i] == first[i]).then_some((i + 1, b))
        })
        .collect();
    k.face_assign(cell, &assignment)
}

/// Coordinates in `[0,1]^n` of a point of a cell of `□[n]` (ids are words).
pub fn ambient_coords(word: &CellWord, coords: &[Rational]) -> Vec<Rational> {
    let mut free = coords.iter();
    word.letters()
        .iter()
        .map(|l| match l {
            Letter::Zero => Rational::zero(),
            Letter::One => Rational::one(),
            Letter::Free => free.next().expect("one coordinate per free letter").clone(),
        })
        .collect()
}

/// Position of the path at time `t` in ambient coordinates of `□[n]`.
pub fn ambient_at(path: &PlDPath, t: &Rational) -> Result<Option<Vec<Rational>>> {
    for seg in &path.segments {
        let word: CellWord = seg.cell.parse()?;
        for w in seg.points.windows(2) {
            if w[0].time <= *t && *t <= w[1].time {
                let x = if w[0].time == w[1].time {
                    w[0].coords.clone()
                } else {
                    let s = (t - &w[0].time) / (&w[1].time - &w[0].time);
                    w[0].coords.iter().zip(&w[1].coords).map(|(a, b)| a + (b - a) * &s).collect()
                };
                return Ok(Some(ambient_coords(&word, &x)));
            }
        }
    }
    Ok(None)
}

/// Whether a natural path in `□[n]` meets a vertex other than `0_n`, `1_n`.
/// Vertices can only be met at integer times, which are the only ones
/// evaluated.
pub fn hits_intermediate_vertex(path: &PlDPath, n: usize) -> Result<bool> {
    let end = path.end_time().cloned().unwrap_or_else(Rational::zero);
    let mut t = Rational::one();
    while t < end {
        if let Some(x) = ambient_at(path, &t)? {
            if x.len() != n {
                return Err(Error::DimensionMismatch(x.len(), n));
            }
            let bits: Option<Vec<u8>> = x.iter().map(is_bit).collect();
            if let Some(bits) = bits {
                let extreme = bits.iter().all(|&b| b == 0) || bits.iter().all(|&b| b == 1);
                if !extreme {
                    return Ok(true);
                }
            }
        }
        t += Rational::one();
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Text format.

/// Parses the `dpath v1` format.
pub fn parse_dpath(text: &str) -> Result<PlDPath> {
    let err = |line: usize, m: String| Error::Format { line, message: m };
    let mut header = false;
    let mut segments: Vec<Segment> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let lineno = n + 1;
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header {
            if tokens != ["dpath", "v1"] {
                return Err(err(lineno, "expected header `dpath v1`".into()));
            }
            header = true;
            continue;
        }
        match tokens[0] {
            "segment" if tokens.len() == 2 => {
                segments.push(Segment { cell: tokens[1].to_string(), points: Vec::new() });
            }
            "pt" if tokens.len() >= 2 => {
                let seg = segments.last_mut().ok_or_else(|| err(lineno, "`pt` before any `segment`".into()))?;
                let nums = tokens[1..]
                    .iter()
                    .map(|s| parse_rational(s).ok_or_else(|| err(lineno, format!("bad rational `{s}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let mut nums = nums.into_iter();
                let time = nums.next().expect("checked length");
                seg.points.push(Breakpoint { time, coords: nums.collect() });
            }
            _ => return Err(err(lineno, format!("unrecognised line `{}`", line.trim()))),
        }
    }
    if !header {
        return Err(err(1, "missing header `dpath v1`".into()));
    }
    Ok(PlDPath { segments })
}

impl fmt::Display for PlDPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dpath v1")?;
        for seg in &self.segments {
            writeln!(f, "segment {}", seg.cell)?;
            for p in &seg.points {
                write!(f, "pt {}", p.time)?;
                for x in &p.coords {
                    write!(f, " {x}")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
