//! Combinatorial models of the flow of a precubical set.
//!
//! The space of execution paths from `α` to `β` splits by grade (total
//! dimension). Each grade is modelled by the nerve of the chain category
//! `Ch_{α,β}(K, n)`; composition is concatenation of chains. There is no
//! grade 0: constant paths are not execution paths.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::chains::{concat, enumerate_chains, natural_grade_bound, ChainCategory, CubeChain};
use crate::error::{Error, Result};
use crate::nerve::{homology, nerve, pi0, HomologySummary, NerveComplex};
use crate::pcs::{standard_cube, CellRef, PrecubicalSet};

/// One grade of a path space.
#[derive(Clone, Debug)]
pub struct GradeModel {
    pub grade: usize,
    pub category: ChainCategory,
    pub nerve_counts: Vec<usize>,
    pub homology: HomologySummary,
    /// Connected components as lists of object indices.
    pub components: Vec<Vec<usize>>,
    pub warnings: Vec<String>,
}

impl GradeModel {
    pub fn new(category: ChainCategory) -> Self {
        let n: NerveComplex = nerve(&category, None);
        let h = homology(&category, &n, n.top_dim());
        GradeModel {
            grade: category.grade,
            components: pi0(&category),
            nerve_counts: n.counts(),
            homology: h,
            warnings: n.warnings,
            category,
        }
    }

    /// Index of the component containing `chain`.
    pub fn component_of(&self, chain: &CubeChain) -> Option<usize> {
        let o = self.category.object_index(chain)?;
        self.components.iter().position(|c| c.contains(&o))
    }
}

/// Path space model between two vertices, one entry per non-empty grade.
#[derive(Clone, Debug)]
pub struct PathSpaceModel {
    pub from: CellRef,
    pub to: CellRef,
    pub grades: Vec<GradeModel>,
}

impl PathSpaceModel {
    /// Components summed over grades; distinct grades never meet.
    pub fn pi0(&self) -> usize {
        self.grades.iter().map(|g| g.components.len()).sum()
    }

    pub fn grade(&self, grade: usize) -> Option<&GradeModel> {
        self.grades.iter().find(|g| g.grade == grade)
    }

    /// `(grade, component)` of a chain.
    pub fn class_of(&self, chain: &CubeChain) -> Option<(usize, usize)> {
        let g = self.grade(chain.grade)?;
        Some((chain.grade, g.component_of(chain)?))
    }

    /// The `pathspace` report.
    pub fn report(&self, k: &PrecubicalSet) -> String {
        let mut out = format!("pathspace {} -> {}\n", k.id(self.from), k.id(self.to));
        for g in &self.grades {
            let _ = writeln!(out, "grade {}", g.grade);
            let _ = writeln!(out, "objects {}", g.category.object_count());
            let _ = writeln!(out, "morphisms {}", g.category.morphism_count());
            let _ = writeln!(out, "pi0 {}", g.components.len());
            let betti: Vec<String> = g.homology.betti.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "betti {}", betti.join(" "));
            for (d, t) in g.homology.torsion.iter().enumerate().filter(|(_, t)| !t.is_empty()) {
                let t: Vec<String> = t.iter().map(|x| format!("Z/{x}")).collect();
                let _ = writeln!(out, "torsion {d} {}", t.join(" "));
            }
            for w in &g.warnings {
                let _ = writeln!(out, "warning {w}");
            }
        }
        let _ = writeln!(out, "pi0 = {}", self.pi0());
        out
    }
}

/// Grade bound to use: the explicit one, or the longest chain when the
/// relevant part of the complex has no directed cycle.
pub fn resolve_grade_bound(k: &PrecubicalSet, from: CellRef, to: CellRef, n_max: Option<usize>) -> Result<usize> {
    for v in [from, to] {
        if v.dim != 0 {
            return Err(Error::NotAVertex(k.id(v).into()));
        }
    }
    match n_max {
        Some(n) => Ok(n),
        None => natural_grade_bound(k, from, to).ok_or(Error::GradeBoundRequired),
    }
}

/// Path space model from `from` to `to` in grades `1..=n_max`.
pub fn path_space_model(k: &PrecubicalSet, from: CellRef, to: CellRef, n_max: Option<usize>) -> Result<PathSpaceModel> {
    let bound = resolve_grade_bound(k, from, to, n_max)?;
    let mut grades = Vec::new();
    for (grade, objects) in enumerate_chains(k, from, to, bound)? {
        if objects.is_empty() {
            continue;
        }
        let c = ChainCategory::from_objects(k, from, to, grade, objects)?;
        grades.push(GradeModel::new(c));
    }
    Ok(PathSpaceModel { from, to, grades })
}

/// States and non-empty path spaces of a complex.
#[derive(Clone, Debug)]
pub struct FlowModel {
    pub complex: PrecubicalSet,
    pub states: Vec<CellRef>,
    pub spaces: BTreeMap<(CellRef, CellRef), PathSpaceModel>,
}

impl FlowModel {
    /// Path space between two states; `None` stands for the empty space.
    pub fn space(&self, from: CellRef, to: CellRef) -> Option<&PathSpaceModel> {
        self.spaces.get(&(from, to))
    }

    /// Composition on components: `(x, y) ↦ [x ∗ y]`.
    pub fn compose_classes(&self, x: &CubeChain, y: &CubeChain) -> Result<(CubeChain, (usize, usize))> {
        let z = compose_classes(&self.complex, x, y)?;
        let class = self
            .space(z.from, z.to)
            .and_then(|s| s.class_of(&z))
            .ok_or_else(|| Error::InvalidComplex("composite lies outside the computed grades".into()))?;
        Ok((z, class))
    }
}

/// Flow model for every ordered pair of vertices. Acyclic complexes need
/// no bound; otherwise `n_max` caps the grades.
pub fn flow_model(k: &PrecubicalSet, n_max: Option<usize>) -> Result<FlowModel> {
    let states: Vec<CellRef> = k.vertices().collect();
    let mut spaces = BTreeMap::new();
    for &a in &states {
        for &b in &states {
            let m = path_space_model(k, a, b, n_max)?;
            if !m.grades.is_empty() {
                spaces.insert((a, b), m);
            }
        }
    }
    Ok(FlowModel { complex: k.clone(), states, spaces })
}

/// Flow model of the standard `n`-cube.
pub fn natural_cube_flow(n: usize) -> FlowModel {
    flow_model(&standard_cube(n), None).expect("cubes are acyclic and small")
}

/// Concatenation of chains representing composable path classes.
pub fn compose_classes(k: &PrecubicalSet, x: &CubeChain, y: &CubeChain) -> Result<CubeChain> {
    concat(k, x, y)
}

/// Vertices other than `to` that are reachable from `from` by a nonconstant
/// path and have no outgoing edge.
pub fn deadlock_states(k: &PrecubicalSet, from: CellRef, to: CellRef) -> Result<Vec<CellRef>> {
    for v in [from, to] {
        if v.dim != 0 {
            return Err(Error::NotAVertex(k.id(v).into()));
        }
    }
    let mut succ: Vec<Vec<CellRef>> = vec![Vec::new(); k.num_cells(0)];
    for e in k.cells_of_dim(1) {
        succ[k.initial_vertex(e).index].push(k.final_vertex(e));
    }
    let mut seen = HashSet::new();
    let mut queue: VecDeque<CellRef> = succ[from.index].iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        if seen.insert(v) {
            queue.extend(succ[v.index].iter().copied());
        }
    }
    let mut out: Vec<CellRef> = seen.into_iter().filter(|&v| v != to && succ[v.index].is_empty()).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::{amalgam, boundary_cube, chain_cube, loop_complex};

    fn ends(k: &PrecubicalSet, n: usize) -> (CellRef, CellRef) {
        (k.vertex(&"0".repeat(n)).unwrap(), k.vertex(&"1".repeat(n)).unwrap())
    }

    #[test]
    fn cube_path_spaces_are_contractible() {
        for n in 1..=4 {
            let k = standard_cube(n);
            let (a, b) = ends(&k, n);
            let m = path_space_model(&k, a, b, None).unwrap();
            assert_eq!(m.grades.len(), 1);
            assert_eq!(m.grades[0].grade, n);
            assert!(m.grades[0].homology.is_point());
            assert_eq!(m.pi0(), 1);
        }
    }

    #[test]
    fn boundary_square_has_two_points() {
        let k = boundary_cube(2);
        let (a, b) = ends(&k, 2);
        let m = path_space_model(&k, a, b, None).unwrap();
        assert_eq!(m.pi0(), 2);
        assert_eq!(m.grades[0].homology.betti, vec![2]);
    }

    #[test]
    fn glued_cubes_give_a_sphere() {
        let k = amalgam(3, &boundary_cube(3)).unwrap().0;
        let (a, b) = ends(&k, 3);
        let m = path_space_model(&k, a, b, None).unwrap();
        assert_eq!(m.grade(3).unwrap().homology.betti_trimmed(), &[1, 0, 1]);
    }

    #[test]
    fn unknown_or_cyclic() {
        let l = loop_complex();
        let v = l.vertex("v").unwrap();
        assert_eq!(path_space_model(&l, v, v, None).unwrap_err(), Error::GradeBoundRequired);
        let e = l.try_cell("e").unwrap();
        assert!(matches!(path_space_model(&l, e, v, Some(2)), Err(Error::NotAVertex(_))));
        let m = path_space_model(&l, v, v, Some(5)).unwrap();
        assert_eq!(m.grades.iter().map(|g| g.components.len()).collect::<Vec<_>>(), vec![1; 5]);
    }

    #[test]
    fn cube_flow() {
        let f = natural_cube_flow(2);
        let k = &f.complex;
        let v = |s: &str| k.vertex(s).unwrap();
        let m = f.space(v("00"), v("10")).unwrap();
        assert_eq!((m.grades.len(), m.grades[0].grade, m.pi0()), (1, 1, 1));
        assert!(f.space(v("10"), v("01")).is_none());
        for &s in &f.states {
            assert!(f.space(s, s).is_none());
        }
        assert_eq!(f.spaces.len(), 5);

        let f = natural_cube_flow(3);
        let m = f.space(f.complex.vertex("000").unwrap(), f.complex.vertex("111").unwrap()).unwrap();
        assert!(m.grades[0].homology.is_point());
        assert_eq!(m.grades[0].grade, 3);
    }

    #[test]
    fn composition_of_classes() {
        let k = chain_cube(&[1, 1]).unwrap();
        let x = CubeChain::parse(&k, "1.*").unwrap();
        let y = CubeChain::parse(&k, "2.*").unwrap();
        let f = flow_model(&k, None).unwrap();
        let (z, class) = f.compose_classes(&x, &y).unwrap();
        assert_eq!(z.grade, 2);
        assert_eq!(class, (2, 0));
        assert!(f.compose_classes(&y, &x).is_err());

        let l = loop_complex();
        let e = CubeChain::parse(&l, "e").unwrap();
        let ee = compose_classes(&l, &e, &e).unwrap();
        let m = path_space_model(&l, e.from, e.to, Some(2)).unwrap();
        assert_eq!(m.class_of(&ee), Some((2, 0)));
        assert_eq!(m.grade(2).unwrap().category.object_count(), 1);
    }

    #[test]
    fn no_deadlock_in_a_cube() {
        let k = standard_cube(3);
        let (a, b) = ends(&k, 3);
        assert!(deadlock_states(&k, a, b).unwrap().is_empty());
        let k = boundary_cube(2);
        let (a, b) = ends(&k, 2);
        assert!(deadlock_states(&k, a, b).unwrap().is_empty());
    }
}
