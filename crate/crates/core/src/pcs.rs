//! Finite precubical sets.
//!
//! A [`PrecubicalSet`] stores its cells per dimension, sorted by identifier,
//! together with a total face table. Cells are addressed by [`CellRef`]
//! (dimension plus position in the canonical order), identifiers are only
//! used at the text boundary and in reports.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Position of a cell inside a [`PrecubicalSet`]: its dimension and its rank
/// in the canonical `(dimension, identifier)` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cell {
    id: String,
    // faces[2 * (i - 1) + eps], indices into the cells of dimension dim - 1
    faces: Vec<usize>,
}

/// A finite precubical set.
///
/// Construction only guarantees that the face table is total and
/// well-typed; the cubical relations are checked by [`validate`].
#[derive(Clone, Debug, Default)]
pub struct PrecubicalSet {
    cells: Vec<Vec<Cell>>,
    lookup: HashMap<String, CellRef>,
}

impl PartialEq for PrecubicalSet {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for PrecubicalSet {}

impl PrecubicalSet {
    /// Builds a complex from `(id, dim, face ids)` triples, where the face
    /// ids are listed in the order `(1,0), (1,1), (2,0), ...`.
    pub fn from_cells<I, S>(cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize, Vec<S>)>,
        S: Into<String>,
    {
        let mut raw = RawPcs::default();
        for (id, dim, faces) in cells {
            let id = id.into();
            for (slot, target) in faces.into_iter().enumerate() {
                raw.faces.push(FaceEntry {
                    cell: id.clone(),
                    index: slot / 2 + 1,
                    eps: (slot % 2) as u8,
                    target: target.into(),
                });
            }
            raw.cells.push((id, dim));
        }
        raw.build().map_err(|report| Error::InvalidComplex(report.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Highest dimension of a cell, `None` for the empty complex.
    pub fn max_dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    /// Number of cells per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = CellRef> + '_ {
        (0..self.num_cells(dim)).map(move |index| CellRef { dim, index })
    }

    /// All cells in canonical order.
    pub fn cells(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.cells.iter().enumerate().flat_map(|(dim, cs)| (0..cs.len()).map(move |index| CellRef { dim, index }))
    }

    pub fn vertices(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.cells_of_dim(0)
    }

    pub fn id(&self, c: CellRef) -> &str {
        &self.cells[c.dim][c.index].id
    }

    pub fn cell(&self, id: &str) -> Option<CellRef> {
        self.lookup.get(id).copied()
    }

    pub fn try_cell(&self, id: &str) -> Result<CellRef> {
        self.cell(id).ok_or_else(|| Error::UnknownCell(id.to_string()))
    }

    /// Looks up a vertex by identifier.
    pub fn vertex(&self, id: &str) -> Result<CellRef> {
        let c = self.try_cell(id)?;
        if c.dim != 0 {
            return Err(Error::NotAVertex(id.to_string()));
        }
        Ok(c)
    }

    /// `∂_i^eps c` for `1 <= i <= dim(c)`.
    ///
    /// Panics when `i` is out of range; see [`PrecubicalSet::try_face`].
    pub fn face(&self, c: CellRef, i: usize, eps: u8) -> CellRef {
        assert!(i >= 1 && i <= c.dim, "face index {i} out of range for dimension {}", c.dim);
        let index = self.cells[c.dim][c.index].faces[2 * (i - 1) + eps as usize];
        CellRef { dim: c.dim - 1, index }
    }

    pub fn try_face(&self, c: CellRef, i: usize, eps: u8) -> Result<CellRef> {
        if i == 0 || i > c.dim || eps > 1 {
            return Err(Error::FaceIndex { cell: self.id(c).to_string(), index: i, dim: c.dim });
        }
        Ok(self.face(c, i, eps))
    }

    /// Applies one face per assigned coordinate. Indices refer to the
    /// coordinates of `c` and must be distinct; they are applied in
    /// decreasing order so that no index shifts.
    pub fn face_assign(&self, c: CellRef, assignment: &[(usize, u8)]) -> Result<CellRef> {
        let mut sorted = assignment.to_vec();
        sorted.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::FaceIndex { cell: self.id(c).to_string(), index: sorted[0].0, dim: c.dim });
        }
        let mut cur = c;
        for (i, eps) in sorted {
            if i == 0 || i > c.dim || eps > 1 {
                return Err(Error::FaceIndex { cell: self.id(c).to_string(), index: i, dim: c.dim });
            }
            cur = self.face(cur, i, eps);
        }
        Ok(cur)
    }

    /// Iterated face `∂^eps_A c = ∂^eps_{a1} ∂^eps_{a2} ... ∂^eps_{ak} c`
    /// with `A = {a1 < ... < ak}`.
    pub fn iterated_face(&self, c: CellRef, indices: &[usize], eps: u8) -> Result<CellRef> {
        let assignment: Vec<(usize, u8)> = indices.iter().map(|&i| (i, eps)).collect();
        self.face_assign(c, &assignment)
    }

    /// `∂^0_{1..n} c`.
    pub fn initial_vertex(&self, c: CellRef) -> CellRef {
        let mut cur = c;
        while cur.dim > 0 {
            cur = self.face(cur, cur.dim, 0);
        }
        cur
    }

    /// `∂^1_{1..n} c`.
    pub fn final_vertex(&self, c: CellRef) -> CellRef {
        let mut cur = c;
        while cur.dim > 0 {
            cur = self.face(cur, cur.dim, 1);
        }
        cur
    }

    /// Evaluates the characteristic map of `c` on a cell of `□[dim c]`.
    pub fn eval_word(&self, c: CellRef, word: &CellWord) -> CellRef {
        assert_eq!(word.len(), c.dim, "word length must equal the cell dimension");
        let assignment: Vec<(usize, u8)> =
            word.letters().iter().enumerate().filter_map(|(pos, l)| l.bit().map(|b| (pos + 1, b))).collect();
        self.face_assign(c, &assignment).expect("word positions are in range")
    }

    /// Converts back into the unresolved form, e.g. for editing or writing.
    pub fn to_raw(&self) -> RawPcs {
        let mut raw = RawPcs::default();
        for c in self.cells() {
            raw.cells.push((self.id(c).to_string(), c.dim));
        }
        for c in self.cells() {
            for i in 1..=c.dim {
                for eps in 0..2u8 {
                    raw.faces.push(FaceEntry {
                        cell: self.id(c).to_string(),
                        index: i,
                        eps,
                        target: self.id(self.face(c, i, eps)).to_string(),
                    });
                }
            }
        }
        raw
    }

    /// Sub-complex on a face-closed set of cells. Panics if the set is not
    /// face-closed; use [`closure`] first.
    pub fn restrict(&self, keep: &BTreeSet<CellRef>) -> PrecubicalSet {
        let mut cells = Vec::new();
        for &c in keep {
            let faces = (1..=c.dim)
                .flat_map(|i| (0..2u8).map(move |eps| (i, eps)))
                .map(|(i, eps)| {
                    let f = self.face(c, i, eps);
                    assert!(keep.contains(&f), "restrict: set is not face-closed");
                    self.id(f).to_string()
                })
                .collect();
            cells.push((self.id(c).to_string(), c.dim, faces));
        }
        PrecubicalSet::from_cells(cells).expect("restriction of a complex is a complex")
    }
}

/// Smallest face-closed set containing `cells`.
pub fn closure(k: &PrecubicalSet, cells: impl IntoIterator<Item = CellRef>) -> BTreeSet<CellRef> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<CellRef> = cells.into_iter().collect();
    while let Some(c) = stack.pop() {
        if out.insert(c) {
            for i in 1..=c.dim {
                stack.push(k.face(c, i, 0));
                stack.push(k.face(c, i, 1));
            }
        }
    }
    out
}

/// Sub-complex generated by the named cells. Returns the complex and the
/// identifiers that had to be added to make the set face-closed.
pub fn subcomplex(k: &PrecubicalSet, ids: &[&str]) -> Result<(PrecubicalSet, Vec<String>)> {
    let given: BTreeSet<CellRef> = ids.iter().map(|id| k.try_cell(id)).collect::<Result<_>>()?;
    let closed = closure(k, given.iter().copied());
    let added = closed.difference(&given).map(|&c| k.id(c).to_string()).collect();
    Ok((k.restrict(&closed), added))
}

// ---------------------------------------------------------------------------
// Unresolved form, validation and the text format.

/// One `face` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceEntry {
    pub cell: String,
    pub index: usize,
    pub eps: u8,
    pub target: String,
}

/// A precubical set as read from text, before identifiers are resolved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPcs {
    pub cells: Vec<(String, usize)>,
    pub faces: Vec<FaceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateCell(String),
    UnknownFaceSource {
        cell: String,
    },
    FaceIndexOutOfRange {
        cell: String,
        index: usize,
        dim: usize,
    },
    DuplicateFace {
        cell: String,
        index: usize,
        eps: u8,
    },
    MissingFace {
        cell: String,
        index: usize,
        eps: u8,
    },
    DanglingFace {
        cell: String,
        index: usize,
        eps: u8,
        target: String,
    },
    WrongFaceDimension {
        cell: String,
        index: usize,
        eps: u8,
        target: String,
    },
    /// `∂_i^eps ∂_j^eta c != ∂_{j-1}^eta ∂_i^eps c` for `i < j`.
    CubicalRelation {
        cell: String,
        i: usize,
        j: usize,
        eps: u8,
        eta: u8,
        lhs: String,
        rhs: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateCell(id) => write!(f, "duplicate cell {id}"),
            Violation::UnknownFaceSource { cell } => write!(f, "face line for unknown cell {cell}"),
            Violation::FaceIndexOutOfRange { cell, index, dim } => {
                write!(f, "face index {index} out of range for {cell} (dim {dim})")
            }
            Violation::DuplicateFace { cell, index, eps } => write!(f, "duplicate face {cell} {index} {eps}"),
            Violation::MissingFace { cell, index, eps } => write!(f, "missing face {cell} {index} {eps}"),
            Violation::DanglingFace { cell, index, eps, target } => {
                write!(f, "dangling face {cell} {index} {eps} -> {target}")
            }
            Violation::WrongFaceDimension { cell, index, eps, target } => {
                write!(f, "face {cell} {index} {eps} -> {target} has the wrong dimension")
            }
            Violation::CubicalRelation { cell, i, j, eps, eta, lhs, rhs } => {
                write!(f, "relation {cell}: d{i}^{eps} d{j}^{eta} = {lhs} but d{}^{eta} d{i}^{eps} = {rhs}", j - 1)
            }
        }
    }
}

/// Every violated condition, in a deterministic order. Empty iff the input
/// is a precubical set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, v) in self.violations.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl RawPcs {
    fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut dims: HashMap<&str, usize> = HashMap::new();
        for (id, dim) in &self.cells {
            if dims.insert(id, *dim).is_some() {
                out.push(Violation::DuplicateCell(id.clone()));
            }
        }
        let mut seen: HashMap<(&str, usize, u8), &str> = HashMap::new();
        for fe in &self.faces {
            let Some(&dim) = dims.get(fe.cell.as_str()) else {
                out.push(Violation::UnknownFaceSource { cell: fe.cell.clone() });
                continue;
            };
            if fe.index == 0 || fe.index > dim || fe.eps > 1 {
                out.push(Violation::FaceIndexOutOfRange { cell: fe.cell.clone(), index: fe.index, dim });
                continue;
            }
            if seen.insert((&fe.cell, fe.index, fe.eps), &fe.target).is_some() {
                out.push(Violation::DuplicateFace { cell: fe.cell.clone(), index: fe.index, eps: fe.eps });
                continue;
            }
            match dims.get(fe.target.as_str()) {
                None => out.push(Violation::DanglingFace {
                    cell: fe.cell.clone(),
                    index: fe.index,
                    eps: fe.eps,
                    target: fe.target.clone(),
                }),
                Some(&t) if t + 1 != dim => out.push(Violation::WrongFaceDimension {
                    cell: fe.cell.clone(),
                    index: fe.index,
                    eps: fe.eps,
                    target: fe.target.clone(),
                }),
                Some(_) => {}
            }
        }
        let mut cells: Vec<&(String, usize)> = self.cells.iter().collect();
        cells.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        cells.dedup();
        for (id, dim) in cells {
            for i in 1..=*dim {
                for eps in 0..2u8 {
                    if !seen.contains_key(&(id.as_str(), i, eps)) {
                        out.push(Violation::MissingFace { cell: id.clone(), index: i, eps });
                    }
                }
            }
        }
        out
    }

    /// Resolves identifiers. Fails with the structural violations (missing,
    /// dangling or duplicate entries); cubical relations are not checked.
    pub fn build(&self) -> std::result::Result<PrecubicalSet, ValidationReport> {
        let violations = self.structural_violations();
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }
        let top = self.cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
        let mut per_dim: Vec<Vec<&str>> = vec![Vec::new(); top];
        for (id, dim) in &self.cells {
            per_dim[*dim].push(id);
        }
        let mut lookup = HashMap::new();
        for (dim, ids) in per_dim.iter_mut().enumerate() {
            ids.sort_unstable();
            for (index, id) in ids.iter().enumerate() {
                lookup.insert(id.to_string(), CellRef { dim, index });
            }
        }
        let mut cells: Vec<Vec<Cell>> = per_dim
            .iter()
            .enumerate()
            .map(|(dim, ids)| {
                ids.iter().map(|id| Cell { id: id.to_string(), faces: vec![usize::MAX; 2 * dim] }).collect()
            })
            .collect();
        for fe in &self.faces {
            let src = lookup[&fe.cell];
            let tgt = lookup[&fe.target];
            cells[src.dim][src.index].faces[2 * (fe.index - 1) + fe.eps as usize] = tgt.index;
        }
        Ok(PrecubicalSet { cells, lookup })
    }

    /// Structural violations if any, otherwise the cubical-relation check.
    pub fn validate(&self) -> ValidationReport {
        match self.build() {
            Err(report) => report,
            Ok(k) => validate(&k),
        }
    }
}

/// Checks every cubical relation
/// `∂_i^eps ∂_j^eta c = ∂_{j-1}^eta ∂_i^eps c` for `i < j`.
pub fn validate(k: &PrecubicalSet) -> ValidationReport {
    let mut violations = Vec::new();
    for c in k.cells().filter(|c| c.dim >= 2) {
        for j in 2..=c.dim {
            for i in 1..j {
                for eps in 0..2u8 {
                    for eta in 0..2u8 {
                        let lhs = k.face(k.face(c, j, eta), i, eps);
                        let rhs = k.face(k.face(c, i, eps), j - 1, eta);
                        if lhs != rhs {
                            violations.push(Violation::CubicalRelation {
                                cell: k.id(c).to_string(),
                                i,
                                j,
                                eps,
                                eta,
                                lhs: k.id(lhs).to_string(),
                                rhs: k.id(rhs).to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Format { line, message: message.into() }
}

/// Parses the `pcs v1` text format. Only syntax is checked here.
pub fn parse_pcs(text: &str) -> Result<RawPcs> {
    let mut raw = RawPcs::default();
    let mut header = false;
    for (n, line) in text.lines().enumerate() {
        let lineno = n + 1;
        let tokens: Vec<&str> = strip_comment(line).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header {
            if tokens != ["pcs", "v1"] {
                return Err(format_err(lineno, "expected header `pcs v1`"));
            }
            header = true;
            continue;
        }
        match tokens.as_slice() {
            ["cell", id, "dim", k] => {
                let dim = k.parse::<usize>().map_err(|_| format_err(lineno, format!("bad dimension `{k}`")))?;
                raw.cells.push((id.to_string(), dim));
            }
            ["face", id, i, eps, target] => {
                let index = i.parse::<usize>().map_err(|_| format_err(lineno, format!("bad face index `{i}`")))?;
                let eps = match *eps {
                    "0" => 0,
                    "1" => 1,
                    other => return Err(format_err(lineno, format!("bad sign `{other}`"))),
                };
                raw.faces.push(FaceEntry { cell: id.to_string(), index, eps, target: target.to_string() });
            }
            _ => return Err(format_err(lineno, format!("unrecognised line `{}`", line.trim()))),
        }
    }
    if !header {
        return Err(format_err(1, "missing header `pcs v1`"));
    }
    Ok(raw)
}

/// Parses and resolves; structural problems become format errors.
pub fn read_pcs(text: &str) -> Result<PrecubicalSet> {
    parse_pcs(text)?.build().map_err(|report| Error::InvalidComplex(report.to_string()))
}

/// Writes the canonical `pcs v1` form: cells in `(dimension, id)` order,
/// then their faces.
pub fn write_pcs(k: &PrecubicalSet) -> String {
    let mut out = String::from("pcs v1\n");
    for c in k.cells() {
        out.push_str(&format!("cell {} dim {}\n", k.id(c), c.dim));
    }
    for c in k.cells() {
        for i in 1..=c.dim {
            for eps in 0..2u8 {
                out.push_str(&format!("face {} {} {} {}\n", k.id(c), i, eps, k.id(k.face(c, i, eps))));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Cells of the standard cube.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Zero,
    One,
    Free,
}

impl Letter {
    pub fn bit(self) -> Option<u8> {
        match self {
            Letter::Zero => Some(0),
            Letter::One => Some(1),
            Letter::Free => None,
        }
    }

    fn from_bit(b: u8) -> Letter {
        if b == 0 {
            Letter::Zero
        } else {
            Letter::One
        }
    }
}

/// A cell of `□[n]` written as a word over `{0, 1, *}`.
///
/// The empty word (the unique cell of `□[0]`) is spelled `()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellWord(Vec<Letter>);

impl CellWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        CellWord(letters)
    }

    pub fn top(n: usize) -> Self {
        CellWord(vec![Letter::Free; n])
    }

    pub fn vertex(bits: &[u8]) -> Self {
        CellWord(bits.iter().map(|&b| Letter::from_bit(b)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        CellWord(vec![Letter::Zero; n])
    }

    pub fn ones(n: usize) -> Self {
        CellWord(vec![Letter::One; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Length of the word, i.e. the ambient cube dimension.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Free).count()
    }

    /// Positions (1-based) of the free letters.
    pub fn free_positions(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &l)| l == Letter::Free).map(|(p, _)| p + 1).collect()
    }

    /// Replaces the `i`-th free letter by `eps`.
    pub fn face(&self, i: usize, eps: u8) -> Option<CellWord> {
        let pos = *self.free_positions().get(i.checked_sub(1)?)?;
        let mut letters = self.0.clone();
        letters[pos - 1] = Letter::from_bit(eps);
        Some(CellWord(letters))
    }

    /// Whether `self` is a face (not necessarily proper) of `other`.
    pub fn is_face_of(&self, other: &CellWord) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| *b == Letter::Free || a == b)
    }

    /// All `3^n` cells of `□[n]`.
    pub fn all(n: usize) -> Vec<CellWord> {
        let mut out = vec![CellWord(Vec::with_capacity(n))];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    [Letter::Zero, Letter::One, Letter::Free].into_iter().map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        CellWord(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for CellWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::Zero => "0",
                Letter::One => "1",
                Letter::Free => "*",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for CellWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "()" {
            return Ok(CellWord(Vec::new()));
        }
        s.chars()
            .map(|ch| match ch {
                '0' => Ok(Letter::Zero),
                '1' => Ok(Letter::One),
                '*' => Ok(Letter::Free),
                _ => Err(Error::UnknownCell(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(CellWord)
    }
}

fn word_cells(words: &[CellWord], name: impl Fn(&CellWord) -> String) -> Vec<(String, usize, Vec<String>)> {
    words
        .iter()
        .map(|w| {
            let faces = (1..=w.dim())
                .flat_map(|i| (0..2u8).map(move |eps| (i, eps)))
                .map(|(i, eps)| name(&w.face(i, eps).expect("index in range")))
                .collect();
            (name(w), w.dim(), faces)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Standard constructions.

/// `□[n]`, cells named by their words.
pub fn standard_cube(n: usize) -> PrecubicalSet {
    let words = CellWord::all(n);
    PrecubicalSet::from_cells(word_cells(&words, |w| w.to_string())).expect("standard cube is well-formed")
}

/// `∂□[n]`; empty for `n = 0`.
pub fn boundary_cube(n: usize) -> PrecubicalSet {
    if n == 0 {
        return PrecubicalSet::default();
    }
    skeleton(&standard_cube(n), n - 1)
}

/// Cells of dimension at most `n`.
pub fn skeleton(k: &PrecubicalSet, n: usize) -> PrecubicalSet {
    let keep: BTreeSet<CellRef> = k.cells().filter(|c| c.dim <= n).collect();
    k.restrict(&keep)
}

/// The loop: one vertex `v` and one edge `e` from `v` to `v`.
pub fn loop_complex() -> PrecubicalSet {
    PrecubicalSet::from_cells(vec![("v", 0, vec![]), ("e", 1, vec!["v", "v"])]).expect("loop is well-formed")
}

/// `□[n1] * ... * □[np]`: cubes glued final vertex to initial vertex.
///
/// Cells of the `i`-th cube (1-based) are named `i.<word>`; a glued vertex
/// keeps the name it has in the later cube.
pub fn chain_cube(dims: &[usize]) -> Result<PrecubicalSet> {
    if let Some(&bad) = dims.iter().find(|&&d| d == 0) {
        return Err(Error::InvalidComplex(format!("chain cube dimensions must be positive, got {bad}")));
    }
    let mut cells = Vec::new();
    for (pos, &n) in dims.iter().enumerate() {
        let last = pos + 1 == dims.len();
        let ones = CellWord::ones(n);
        let name = |w: &CellWord| {
            if !last && *w == ones {
                format!("{}.{}", pos + 2, CellWord::zeros(dims[pos + 1]))
            } else {
                format!("{}.{}", pos + 1, w)
            }
        };
        for cell in word_cells(&CellWord::all(n), name) {
            if pos > 0 && cell.1 == 0 && cell.0 == format!("{}.{}", pos + 1, CellWord::zeros(n)) {
                // already emitted by the previous cube
                continue;
            }
            cells.push(cell);
        }
    }
    PrecubicalSet::from_cells(cells)
}

/// A map of precubical sets, stored as the image of every source cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcsMap {
    images: Vec<Vec<usize>>,
}

impl PcsMap {
    pub fn from_fn(source: &PrecubicalSet, f: impl Fn(CellRef) -> CellRef) -> Self {
        let images = (0..source.cells.len())
            .map(|dim| {
                source
                    .cells_of_dim(dim)
                    .map(|c| {
                        let img = f(c);
                        assert_eq!(img.dim, dim, "maps preserve dimension");
                        img.index
                    })
                    .collect()
            })
            .collect();
        PcsMap { images }
    }

    pub fn apply(&self, c: CellRef) -> CellRef {
        CellRef { dim: c.dim, index: self.images[c.dim][c.index] }
    }

    /// Whether the map commutes with all face maps.
    pub fn commutes_with_faces(&self, source: &PrecubicalSet, target: &PrecubicalSet) -> bool {
        source.cells().all(|c| {
            (1..=c.dim)
                .all(|i| (0..2u8).all(|eps| self.apply(source.face(c, i, eps)) == target.face(self.apply(c), i, eps)))
        })
    }
}

/// Checks that `a` is a sub-complex of `∂□[n]` (ids are words, faces agree
/// with the cube) and returns its cells as words.
fn boundary_words(n: usize, a: &PrecubicalSet) -> Result<BTreeSet<CellWord>> {
    let bad = |reason: String| Error::NotASubcomplex { n, reason };
    let mut words = BTreeSet::new();
    for c in a.cells() {
        let w: CellWord = a.id(c).parse().map_err(|_| bad(format!("`{}` is not a cell word", a.id(c))))?;
        if w.len() != n || w.dim() != c.dim {
            return Err(bad(format!("`{w}` does not name a {}-cell of the {n}-cube", c.dim)));
        }
        if w.dim() == n {
            return Err(bad(format!("`{w}` is the top cell")));
        }
        for i in 1..=c.dim {
            for eps in 0..2u8 {
                let expected = w.face(i, eps).expect("in range").to_string();
                if a.id(a.face(c, i, eps)) != expected {
                    return Err(bad(format!("face {i} {eps} of `{w}` is not `{expected}`")));
                }
            }
        }
        words.insert(w);
    }
    Ok(words)
}

/// Sub-complex of `∂□[n]` generated by the given words (closure is taken).
pub fn boundary_subcomplex(n: usize, words: &[CellWord]) -> Result<PrecubicalSet> {
    let cube = standard_cube(n);
    let mut refs = Vec::new();
    for w in words {
        if w.len() != n || w.dim() == n {
            return Err(Error::NotASubcomplex { n, reason: format!("`{w}` is not a boundary cell") });
        }
        refs.push(cube.try_cell(&w.to_string())?);
    }
    Ok(cube.restrict(&closure(&cube, refs)))
}

/// `□[n] ⊔_A □[n]` with its two inclusions of `□[n]`.
///
/// Cells of `A` keep their word; the others are duplicated as `L:<word>`
/// and `R:<word>`.
pub fn amalgam(n: usize, a: &PrecubicalSet) -> Result<(PrecubicalSet, PcsMap, PcsMap)> {
    let glued = boundary_words(n, a)?;
    let name = |side: &str, w: &CellWord| {
        if glued.contains(w) {
            w.to_string()
        } else {
            format!("{side}:{w}")
        }
    };
    let words = CellWord::all(n);
    let mut cells = word_cells(&words, |w| name("L", w));
    let right_only: Vec<CellWord> = words.iter().filter(|w| !glued.contains(w)).cloned().collect();
    cells.extend(word_cells(&right_only, |w| name("R", w)));
    let k = PrecubicalSet::from_cells(cells)?;
    let cube = standard_cube(n);
    let inclusion = |side: &str| {
        PcsMap::from_fn(&cube, |c| {
            let w: CellWord = cube.id(c).parse().expect("cube ids are words");
            k.cell(&name(side, &w)).expect("every cube cell has an image")
        })
    };
    let left = inclusion("L");
    let right = inclusion("R");
    Ok((k, left, right))
}

/// All maps `□[n] -> K`, one per `n`-cell of `K`.
pub fn cube_maps_into(k: &PrecubicalSet, n: usize) -> Vec<PcsMap> {
    let cube = standard_cube(n);
    k.cells_of_dim(n)
        .map(|top| {
            PcsMap::from_fn(&cube, |c| {
                let w: CellWord = cube.id(c).parse().expect("cube ids are words");
                k.eval_word(top, &w)
            })
        })
        .collect()
}

/// Tensor product: cells `(a,b)` with faces acting on `a` first, then on
/// `b` with the index shifted by `dim a`.
pub fn tensor(k: &PrecubicalSet, l: &PrecubicalSet) -> PrecubicalSet {
    let name = |a: CellRef, b: CellRef| format!("({},{})", k.id(a), l.id(b));
    let mut cells = Vec::new();
    for a in k.cells() {
        for b in l.cells() {
            let mut faces = Vec::with_capacity(2 * (a.dim + b.dim));
            for i in 1..=a.dim + b.dim {
                for eps in 0..2u8 {
                    faces.push(if i <= a.dim {
                        name(k.face(a, i, eps), b)
                    } else {
                        name(a, l.face(b, i - a.dim, eps))
                    });
                }
            }
            cells.push((name(a, b), a.dim + b.dim, faces));
        }
    }
    PrecubicalSet::from_cells(cells).expect("tensor of complexes is well-formed")
}
