//! Cube chains and their refinement categories.
//!
//! An object of `Ch(K, α, β, n)` is a sequence of cells `c_1, ..., c_p`
//! of positive dimension, glued final vertex to initial vertex, from `α`
//! to `β`, with total dimension `n`. A morphism from a fine chain to a
//! coarse one records, for every coarse cube, an ordered partition of its
//! axes: the fine cube for block `A_r` is the face of the coarse cube with
//! the axes of earlier blocks set to 1 and those of later blocks set to 0.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::pcs::{CellRef, PrecubicalSet};

/// Largest coarse-cube dimension for which ordered partitions are enumerated.
pub const MAX_PARTITION_DIM: usize = 12;

/// Largest number of chains enumerated before giving up.
pub const MAX_CHAINS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeChain {
    pub cells: Vec<CellRef>,
    pub from: CellRef,
    pub to: CellRef,
    pub grade: usize,
}

impl CubeChain {
    /// Checks that the cells have positive dimension and are glued end to end.
    pub fn new(k: &PrecubicalSet, cells: Vec<CellRef>) -> Result<Self> {
        let (Some(&first), Some(&last)) = (cells.first(), cells.last()) else {
            return Err(Error::InvalidComplex("a cube chain has at least one cell".into()));
        };
        if let Some(c) = cells.iter().find(|c| c.dim == 0) {
            return Err(Error::InvalidComplex(format!("cube chain contains the vertex `{}`", k.id(*c))));
        }
        for w in cells.windows(2) {
            let (end, start) = (k.final_vertex(w[0]), k.initial_vertex(w[1]));
            if end != start {
                return Err(Error::EndpointMismatch { left: k.id(end).into(), right: k.id(start).into() });
            }
        }
        let grade = cells.iter().map(|c| c.dim).sum();
        Ok(CubeChain { from: k.initial_vertex(first), to: k.final_vertex(last), grade, cells })
    }

    /// Parses a comma-separated list of cell ids.
    pub fn parse(k: &PrecubicalSet, text: &str) -> Result<Self> {
        let cells = text.split(',').map(|id| k.try_cell(id.trim())).collect::<Result<Vec<_>>>()?;
        CubeChain::new(k, cells)
    }

    /// Number of cubes, `ℓ`.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.dim).collect()
    }

    pub fn display(&self, k: &PrecubicalSet) -> String {
        self.cells.iter().map(|&c| k.id(c)).collect::<Vec<_>>().join(",")
    }

    fn sort_key<'a>(&self, k: &'a PrecubicalSet) -> (usize, Vec<&'a str>) {
        (self.cells.len(), self.cells.iter().map(|&c| k.id(c)).collect())
    }
}

/// Sorts chains by `(length, cell ids)`.
pub fn sort_chains(k: &PrecubicalSet, chains: &mut [CubeChain]) {
    chains.sort_by_cached_key(|c| c.sort_key(k));
}

/// Ordered partition of `{1..m}` into nonempty blocks, each kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition(pub Vec<Vec<usize>>);

impl OrderedPartition {
    pub fn trivial(m: usize) -> Self {
        OrderedPartition(vec![(1..=m).collect()])
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> =
            self.0.iter().map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&blocks.join("|"))
    }
}

/// Refinement witness: one ordered partition per cube of the coarse chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness(pub Vec<OrderedPartition>);

impl Witness {
    pub fn identity(dims: &[usize]) -> Self {
        Witness(dims.iter().map(|&d| OrderedPartition::trivial(d)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|p| p.0.len() == 1)
    }

    /// Number of fine cubes.
    pub fn fine_len(&self) -> usize {
        self.0.iter().map(|p| p.0.len()).sum()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" ; "))
    }
}

/// `g ∘ f` for `f: a -> b` and `g: b -> c`, blockwise.
pub fn compose_witness(f: &Witness, g: &Witness) -> Witness {
    let mut fine = f.0.iter();
    Witness(
        g.0.iter()
            .map(|coarse| {
                let mut blocks = Vec::new();
                for axes in &coarse.0 {
                    let part = fine.next().expect("witnesses are composable");
                    for block in &part.0 {
                        let mut mapped: Vec<usize> = block.iter().map(|&x| axes[x - 1]).collect();
                        mapped.sort_unstable();
                        blocks.push(mapped);
                    }
                }
                OrderedPartition(blocks)
            })
            .collect(),
    )
}

/// Fine cubes obtained by cutting `coarse` along `partition`.
pub fn refine_cell(k: &PrecubicalSet, coarse: CellRef, partition: &OrderedPartition) -> Result<Vec<CellRef>> {
    if partition.size() != coarse.dim {
        return Err(Error::DimensionMismatch(partition.size(), coarse.dim));
    }
    let mut out = Vec::with_capacity(partition.0.len());
    for r in 0..partition.0.len() {
        let mut assignment = Vec::new();
        for (q, block) in partition.0.iter().enumerate() {
            if q != r {
                let eps = u8::from(q < r);
                assignment.extend(block.iter().map(|&a| (a, eps)));
            }
        }
        out.push(k.face_assign(coarse, &assignment)?);
    }
    Ok(out)
}

fn combinations(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, size, 0, &mut Vec::with_capacity(size), f);
}

/// All ordered partitions of the axes of `coarse` whose cut reproduces
/// `fine` exactly.
pub fn matching_partitions(k: &PrecubicalSet, coarse: CellRef, fine: &[CellRef]) -> Result<Vec<OrderedPartition>> {
    if coarse.dim > MAX_PARTITION_DIM {
        return Err(Error::ResourceLimit(format!(
            "ordered partitions of a {}-cube (cap {MAX_PARTITION_DIM})",
            coarse.dim
        )));
    }
    if fine.iter().map(|c| c.dim).sum::<usize>() != coarse.dim || fine.iter().any(|c| c.dim == 0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    search(k, coarse, fine, &(1..=coarse.dim).collect::<Vec<_>>(), &[], &mut blocks, &mut out);
    Ok(out)
}

fn search(
    k: &PrecubicalSet,
    coarse: CellRef,
    fine: &[CellRef],
    remaining: &[usize],
    ones: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<OrderedPartition>,
) {
    let r = blocks.len();
    if r == fine.len() {
        out.push(OrderedPartition(blocks.clone()));
        return;
    }
    combinations(remaining, fine[r].dim, &mut |chosen| {
        let mut assignment: Vec<(usize, u8)> = ones.iter().map(|&a| (a, 1)).collect();
        assignment.extend(remaining.iter().filter(|a| !chosen.contains(a)).map(|&a| (a, 0)));
        if k.face_assign(coarse, &assignment).expect("axes in range") == fine[r] {
            let rest: Vec<usize> = remaining.iter().copied().filter(|a| !chosen.contains(a)).collect();
            let mut new_ones = ones.to_vec();
            new_ones.extend_from_slice(chosen);
            blocks.push(chosen.to_vec());
            search(k, coarse, fine, &rest, &new_ones, blocks, out);
            blocks.pop();
        }
    });
}

/// Every refinement witness from `fine` to `coarse`. Includes the identity
/// when the chains coincide.
pub fn hom(k: &PrecubicalSet, fine: &CubeChain, coarse: &CubeChain) -> Result<Vec<Witness>> {
    if fine.from != coarse.from || fine.to != coarse.to || fine.grade != coarse.grade {
        return Ok(Vec::new());
    }
    // the grouping of fine cubes is forced by the coarse dimensions
    let mut segments = Vec::with_capacity(coarse.len());
    let mut pos = 0;
    for &c in &coarse.cells {
        let start = pos;
        let mut total = 0;
        while total < c.dim && pos < fine.len() {
            total += fine.cells[pos].dim;
            pos += 1;
        }
        if total != c.dim {
            return Ok(Vec::new());
        }
        segments.push((c, &fine.cells[start..pos]));
    }
    let mut witnesses = vec![Vec::new()];
    for (c, seg) in segments {
        let parts = matching_partitions(k, c, seg)?;
        witnesses = witnesses
            .into_iter()
            .flat_map(|w: Vec<OrderedPartition>| {
                parts.iter().map(move |p| {
                    let mut w = w.clone();
                    w.push(p.clone());
                    w
                })
            })
            .collect();
    }
    Ok(witnesses.into_iter().map(Witness).collect())
}

/// Concatenation; grades add.
pub fn concat(k: &PrecubicalSet, a: &CubeChain, b: &CubeChain) -> Result<CubeChain> {
    if a.to != b.from {
        return Err(Error::EndpointMismatch { left: k.id(a.to).into(), right: k.id(b.from).into() });
    }
    Ok(CubeChain {
        cells: a.cells.iter().chain(&b.cells).copied().collect(),
        from: a.from,
        to: b.to,
        grade: a.grade + b.grade,
    })
}

/// Concatenation of morphisms: witnesses are juxtaposed.
pub fn concat_witness(f: &Witness, g: &Witness) -> Witness {
    Witness(f.0.iter().chain(&g.0).cloned().collect())
}

/// Cells of positive dimension indexed by their initial vertex.
fn cells_by_start(k: &PrecubicalSet) -> HashMap<CellRef, Vec<CellRef>> {
    let mut out: HashMap<CellRef, Vec<CellRef>> = HashMap::new();
    for c in k.cells().filter(|c| c.dim > 0) {
        out.entry(k.initial_vertex(c)).or_default().push(c);
    }
    out
}

/// Longest total dimension of a chain from `from` to `to` when no directed
/// cycle lies between them, `None` otherwise.
pub fn natural_grade_bound(k: &PrecubicalSet, from: CellRef, to: CellRef) -> Option<usize> {
    let nv = k.num_cells(0);
    let mut succ = vec![Vec::new(); nv];
    let mut pred = vec![Vec::new(); nv];
    for e in k.cells_of_dim(1) {
        let (s, t) = (k.initial_vertex(e).index, k.final_vertex(e).index);
        succ[s].push(t);
        pred[t].push(s);
    }
    let reach = |start: usize, adj: &[Vec<usize>]| {
        let mut seen = vec![false; nv];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let fwd = reach(from.index, &succ);
    let bwd = reach(to.index, &pred);
    let live: Vec<bool> = (0..nv).map(|v| fwd[v] && bwd[v]).collect();
    if !live[from.index] {
        return Some(0);
    }
    // Kahn's algorithm on the live part; longest path in edges.
    let mut indeg = vec![0usize; nv];
    for v in (0..nv).filter(|&v| live[v]) {
        for &w in succ[v].iter().filter(|&&w| live[w]) {
            indeg[w] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..nv).filter(|&v| live[v] && indeg[v] == 0).collect();
    let mut longest = vec![0usize; nv];
    let mut visited = 0;
    while let Some(v) = queue.pop() {
        visited += 1;
        for &w in succ[v].iter().filter(|&&w| live[w]) {
            longest[w] = longest[w].max(longest[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    let live_count = live.iter().filter(|&&b| b).count();
    if visited < live_count {
        None
    } else {
        Some(longest[to.index])
    }
}

/// All chains from `from` to `to` of grade `1..=n_max`, per grade, each in
/// canonical order. Every grade in range has an entry, possibly empty.
pub fn enumerate_chains(
    k: &PrecubicalSet,
    from: CellRef,
    to: CellRef,
    n_max: usize,
) -> Result<BTreeMap<usize, Vec<CubeChain>>> {
    for v in [from, to] {
        if v.dim != 0 {
            return Err(Error::NotAVertex(k.id(v).into()));
        }
    }
    let by_start = cells_by_start(k);
    let mut out: BTreeMap<usize, Vec<CubeChain>> = (1..=n_max).map(|g| (g, Vec::new())).collect();
    let mut count = 0usize;
    let mut path = Vec::new();
    let ends = (from, to);
    extend(k, &by_start, from, n_max, ends, &mut path, &mut out, &mut count)?;
    for chains in out.values_mut() {
        sort_chains(k, chains);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    k: &PrecubicalSet,
    by_start: &HashMap<CellRef, Vec<CellRef>>,
    at: CellRef,
    remaining: usize,
    ends: (CellRef, CellRef),
    path: &mut Vec<CellRef>,
    out: &mut BTreeMap<usize, Vec<CubeChain>>,
    count: &mut usize,
) -> Result<()> {
    let (from, to) = ends;
    if !path.is_empty() && at == to {
        *count += 1;
        if *count > MAX_CHAINS {
            return Err(Error::ResourceLimit(format!("more than {MAX_CHAINS} cube chains")));
        }
        let grade = path.iter().map(|c| c.dim).sum();
        out.get_mut(&grade).expect("grade in range").push(CubeChain { cells: path.clone(), from, to, grade });
    }
    let Some(next) = by_start.get(&at) else { return Ok(()) };
    for &c in next.iter().filter(|c| c.dim <= remaining) {
        path.push(c);
        extend(k, by_start, k.final_vertex(c), remaining - c.dim, ends, path, out, count)?;
        path.pop();
    }
    Ok(())
}

/// A non-identity morphism of a chain category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub witness: Witness,
}

/// The category `Ch(K, from, to, grade)`. Identities are implicit; the
/// morphism list holds the non-identity ones.
#[derive(Clone, Debug)]
pub struct ChainCategory {
    pub grade: usize,
    pub from: CellRef,
    pub to: CellRef,
    pub objects: Vec<CubeChain>,
    pub morphisms: Vec<Morphism>,
    composition: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl ChainCategory {
    /// Builds the category on a complete, canonically ordered object list.
    pub fn from_objects(
        k: &PrecubicalSet,
        from: CellRef,
        to: CellRef,
        grade: usize,
        objects: Vec<CubeChain>,
    ) -> Result<Self> {
        let index: HashMap<&[CellRef], usize> =
            objects.iter().enumerate().map(|(i, o)| (o.cells.as_slice(), i)).collect();
        let mut by_extremes: HashMap<(CellRef, CellRef, usize), Vec<CellRef>> = HashMap::new();
        for c in k.cells().filter(|c| c.dim > 0) {
            by_extremes.entry((k.initial_vertex(c), k.final_vertex(c), c.dim)).or_default().push(c);
        }

        let mut morphisms = Vec::new();
        for (src, obj) in objects.iter().enumerate() {
            let p = obj.len();
            // cut masks: bit i set means a cut between cube i and i + 1
            for mask in 0..(1u64 << (p - 1)) {
                if mask == (1u64 << (p - 1)) - 1 {
                    continue; // identity grouping
                }
                let mut segments = Vec::new();
                let mut start = 0;
                for i in 0..p {
                    if i + 1 == p || mask & (1 << i) != 0 {
                        segments.push(&obj.cells[start..=i]);
                        start = i + 1;
                    }
                }
                // per segment: (coarse cell, partition) alternatives
                let mut options: Vec<Vec<(CellRef, OrderedPartition)>> = Vec::new();
                for seg in &segments {
                    let opts = if seg.len() == 1 {
                        vec![(seg[0], OrderedPartition::trivial(seg[0].dim))]
                    } else {
                        let key = (
                            k.initial_vertex(seg[0]),
                            k.final_vertex(seg[seg.len() - 1]),
                            seg.iter().map(|c| c.dim).sum(),
                        );
                        let mut opts = Vec::new();
                        for &c in by_extremes.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                            for part in matching_partitions(k, c, seg)? {
                                opts.push((c, part));
                            }
                        }
                        opts
                    };
                    if opts.is_empty() {
                        break;
                    }
                    options.push(opts);
                }
                if options.len() < segments.len() {
                    continue;
                }
                let mut choice = vec![0usize; options.len()];
                'product: loop {
                    let cells: Vec<CellRef> = choice.iter().enumerate().map(|(s, &i)| options[s][i].0).collect();
                    let witness = Witness(choice.iter().enumerate().map(|(s, &i)| options[s][i].1.clone()).collect());
                    let target = *index
                        .get(cells.as_slice())
                        .ok_or_else(|| Error::InvalidComplex("object list is not closed under coarsening".into()))?;
                    morphisms.push(Morphism { source: src, target, witness });
                    for s in (0..options.len()).rev() {
                        choice[s] += 1;
                        if choice[s] < options[s].len() {
                            continue 'product;
                        }
                        choice[s] = 0;
                    }
                    break;
                }
            }
        }
        morphisms.sort_by(|a, b| (a.source, a.target, &a.witness).cmp(&(b.source, b.target, &b.witness)));

        let n = objects.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut lookup: HashMap<(usize, usize, &Witness), usize> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.source].push(i);
            incoming[m.target].push(i);
            lookup.insert((m.source, m.target, &m.witness), i);
        }
        let mut composition = HashMap::new();
        for (fi, f) in morphisms.iter().enumerate() {
            for &gi in &outgoing[f.target] {
                let g = &morphisms[gi];
                let w = compose_witness(&f.witness, &g.witness);
                let h = *lookup
                    .get(&(f.source, g.target, &w))
                    .ok_or_else(|| Error::InvalidComplex("chain category is not closed under composition".into()))?;
                composition.insert((fi, gi), h);
            }
        }
        Ok(ChainCategory { grade, from, to, objects, morphisms, composition, outgoing, incoming })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// Number of non-identity morphisms.
    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    /// Index of `g ∘ f` (apply `f` first), when `f.target == g.source`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    pub fn outgoing(&self, object: usize) -> &[usize] {
        &self.outgoing[object]
    }

    pub fn incoming(&self, object: usize) -> &[usize] {
        &self.incoming[object]
    }

    pub fn object_index(&self, chain: &CubeChain) -> Option<usize> {
        self.objects.iter().position(|o| o.cells == chain.cells)
    }

    /// Number of morphisms `a -> b`, counting the identity.
    pub fn hom_count(&self, a: usize, b: usize) -> usize {
        usize::from(a == b) + self.outgoing[a].iter().filter(|&&m| self.morphisms[m].target == b).count()
    }

    /// The object receiving exactly one morphism from every object.
    pub fn terminal(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&t| (0..self.objects.len()).all(|a| self.hom_count(a, t) == 1))
    }

    /// Exhaustive associativity check of the composition table.
    pub fn is_associative(&self) -> bool {
        self.composition.iter().all(|(&(f, g), &fg)| {
            self.outgoing[self.morphisms[g].target].iter().all(|&h| {
                let left = self.compose(fg, h);
                let right = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                left.is_some() && left == right
            })
        })
    }

    /// Whether every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.morphisms.iter().all(|m| seen.insert((m.source, m.target)))
    }

    /// `chains v1` block for this grade.
    pub fn report(&self, k: &PrecubicalSet) -> String {
        let mut out = format!("grade {}\n", self.grade);
        for (i, o) in self.objects.iter().enumerate() {
            out.push_str(&format!("object {i} : {}\n", o.display(k)));
        }
        for m in &self.morphisms {
            out.push_str(&format!("mor {} -> {} : {}\n", m.source, m.target, m.witness));
        }
        out
    }
}

/// `Ch(K, from, to, grade)`.
pub fn build_category(k: &PrecubicalSet, from: CellRef, to: CellRef, grade: usize) -> Result<ChainCategory> {
    let objects = enumerate_chains(k, from, to, grade)?.remove(&grade).unwrap_or_default();
    ChainCategory::from_objects(k, from, to, grade, objects)
}

/// `has_terminal`: the terminal object, if any.
pub fn has_terminal(c: &ChainCategory) -> Option<&CubeChain> {
    c.terminal().map(|t| &c.objects[t])
}
