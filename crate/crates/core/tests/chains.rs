mod common;

use cubepath::chains::{
    build_category, compose_witness, concat, concat_witness, enumerate_chains, hom, natural_grade_bound, refine_cell,
    ChainCategory, CubeChain,
};
use cubepath::pcs::{chain_cube, loop_complex, standard_cube};
use cubepath::{CellRef, PrecubicalSet};

const MAX_GRADE: usize = 4;

/// Every nonempty category `Ch(K, from, to, g)` with `g <= MAX_GRADE`.
fn categories(k: &PrecubicalSet) -> Vec<ChainCategory> {
    let mut out = Vec::new();
    for from in common::path_starts(k) {
        for to in k.vertices().collect::<Vec<_>>() {
            let top = natural_grade_bound(k, from, to).unwrap_or(3).min(MAX_GRADE);
            for (g, objects) in enumerate_chains(k, from, to, top).unwrap() {
                if !objects.is_empty() {
                    out.push(ChainCategory::from_objects(k, from, to, g, objects).unwrap());
                }
            }
        }
    }
    out
}

fn vertex_sequence(k: &PrecubicalSet, chain: &CubeChain) -> Vec<CellRef> {
    let mut v = vec![chain.from];
    v.extend(chain.cells.iter().map(|&c| k.final_vertex(c)));
    v
}

fn is_subsequence(short: &[CellRef], long: &[CellRef]) -> bool {
    let mut it = long.iter();
    short.iter().all(|x| it.any(|y| y == x))
}

#[test]
fn morphisms_refine_their_target() {
    for (name, k) in common::shared_corpus() {
        for c in categories(k) {
            for m in &c.morphisms {
                let (fine, coarse) = (&c.objects[m.source], &c.objects[m.target]);
                assert_eq!((fine.from, fine.to, fine.grade), (coarse.from, coarse.to, coarse.grade), "{name}");
                assert!(fine.len() > coarse.len(), "{name}: non-identity morphism must shorten");
                assert!(is_subsequence(&vertex_sequence(k, coarse), &vertex_sequence(k, fine)), "{name}");
                let cut: Vec<CellRef> = coarse
                    .cells
                    .iter()
                    .zip(&m.witness.0)
                    .flat_map(|(&cell, p)| refine_cell(k, cell, p).unwrap())
                    .collect();
                assert_eq!(cut, fine.cells, "{name}: witness {}", m.witness);
            }
        }
    }
}

#[test]
fn composition_is_associative_with_witnesses() {
    for (name, k) in common::shared_corpus() {
        for c in categories(k) {
            assert!(c.is_associative(), "{name}, grade {}", c.grade);
            for (fi, f) in c.morphisms.iter().enumerate() {
                for &gi in c.outgoing(f.target) {
                    let h = c.compose(fi, gi).expect("composable");
                    let g = &c.morphisms[gi];
                    assert_eq!((c.morphisms[h].source, c.morphisms[h].target), (f.source, g.target));
                    assert_eq!(c.morphisms[h].witness, compose_witness(&f.witness, &g.witness), "{name}");
                }
            }
        }
    }
}

#[test]
fn hom_sets_match_the_category() {
    for (name, k) in common::shared_corpus().iter().take(12) {
        for c in categories(k) {
            for a in 0..c.object_count() {
                for b in 0..c.object_count() {
                    let direct = hom(k, &c.objects[a], &c.objects[b]).unwrap().len();
                    assert_eq!(direct, c.hom_count(a, b), "{name}: {a} -> {b}");
                }
            }
        }
    }
}

#[test]
fn cubes_have_a_terminal_chain() {
    for n in 1..=4 {
        let k = standard_cube(n);
        let (from, to) = (k.vertex(&"0".repeat(n)).unwrap(), k.vertex(&"1".repeat(n)).unwrap());
        let c = build_category(&k, from, to, n).unwrap();
        let t = c.terminal().expect("terminal object");
        assert_eq!(c.objects[t].len(), 1);
        // finest chains are the n! monotone edge paths
        let finest = c.objects.iter().filter(|o| o.len() == n).count();
        assert_eq!(finest, (1..=n).product::<usize>());
        for o in 0..c.object_count() {
            assert_eq!(c.hom_count(o, t), 1);
        }
    }
}

#[test]
fn concatenation_is_functorial() {
    let k = chain_cube(&[2, 1, 2]).unwrap();
    let v = |id: &str| k.vertex(id).unwrap();
    let (a0, a1, a2) = (v("1.00"), v("3.00"), v("3.11"));
    let left = build_category(&k, a0, a1, 3).unwrap();
    let right = build_category(&k, a1, a2, 2).unwrap();
    let whole = build_category(&k, a0, a2, 5).unwrap();
    assert_eq!(whole.object_count(), left.object_count() * right.object_count());
    for x in &left.objects {
        for y in &right.objects {
            let xy = concat(&k, x, y).unwrap();
            assert!(whole.object_index(&xy).is_some());
        }
    }
    for f in &left.morphisms {
        for y in 0..right.object_count() {
            let id = cubepath::chains::Witness::identity(&right.objects[y].dims());
            let src = concat(&k, &left.objects[f.source], &right.objects[y]).unwrap();
            let dst = concat(&k, &left.objects[f.target], &right.objects[y]).unwrap();
            let w = concat_witness(&f.witness, &id);
            let (s, t) = (whole.object_index(&src).unwrap(), whole.object_index(&dst).unwrap());
            assert!(whole
                .outgoing(s)
                .iter()
                .any(|&m| whole.morphisms[m].target == t && whole.morphisms[m].witness == w));
        }
    }
    for f in &left.morphisms {
        for g in &right.morphisms {
            let w = concat_witness(&f.witness, &g.witness);
            let src = concat(&k, &left.objects[f.source], &right.objects[g.source]).unwrap();
            let dst = concat(&k, &left.objects[f.target], &right.objects[g.target]).unwrap();
            let (s, t) = (whole.object_index(&src).unwrap(), whole.object_index(&dst).unwrap());
            assert!(whole
                .outgoing(s)
                .iter()
                .any(|&m| whole.morphisms[m].target == t && whole.morphisms[m].witness == w));
        }
    }
    assert_eq!(
        whole.morphism_count(),
        (left.morphism_count() + left.object_count()) * (right.morphism_count() + right.object_count())
            - left.object_count() * right.object_count()
    );
}

#[test]
fn loop_has_one_chain_per_grade() {
    let k = loop_complex();
    let v = k.vertex("v").unwrap();
    let chains = enumerate_chains(&k, v, v, 6).unwrap();
    for g in 1..=6 {
        assert_eq!(common::chain_ids(&k, &chains[&g]), vec![vec!["e"; g].join(",")]);
        let c = build_category(&k, v, v, g).unwrap();
        assert_eq!(c.morphism_count(), 0);
    }
}

#[test]
fn corpus_categories_are_thin() {
    for (name, k) in common::shared_corpus() {
        for c in categories(k) {
            assert!(c.is_thin(), "{name}, grade {}", c.grade);
        }
    }
}
