mod common;

use std::collections::HashSet;

use cubepath::flow::{deadlock_states, flow_model, natural_cube_flow, path_space_model, FlowModel};
use cubepath::pcs::loop_complex;
use cubepath::spatial::is_proper;
use cubepath::{CellRef, Error};

/// Flow models of the small acyclic corpus members.
fn small_flows() -> Vec<(String, FlowModel)> {
    common::shared_corpus()
        .iter()
        .filter(|(_, k)| k.total_cells() <= 150)
        .filter_map(|(name, k)| flow_model(k, None).ok().map(|f| (name.clone(), f)))
        .collect()
}

#[test]
fn there_is_no_grade_zero() {
    let flows = small_flows();
    assert!(flows.len() >= 15);
    for (name, f) in &flows {
        for (&(a, b), space) in &f.spaces {
            assert!(space.grade(0).is_none(), "{name}");
            for g in &space.grades {
                assert!(g.grade >= 1 && !g.category.objects.is_empty());
                assert!(g.category.objects.iter().all(|o| o.from == a && o.to == b && o.grade == g.grade));
            }
        }
        for &v in &f.states {
            if let Some(loops) = f.space(v, v) {
                assert!(loops.grades.iter().all(|g| g.grade > 0), "{name}");
            }
        }
    }
}

#[test]
fn composition_respects_components() {
    for (name, f) in small_flows() {
        for (&(a, b), left) in &f.spaces {
            for (&(b2, c), right) in &f.spaces {
                if b != b2 {
                    continue;
                }
                for gl in &left.grades {
                    // one representative per component
                    let reps: Vec<usize> = gl.components.iter().map(|comp| comp[0]).collect();
                    for gr in &right.grades {
                        for (xi, x) in gl.category.objects.iter().enumerate() {
                            let comp = gl.components.iter().position(|comp| comp.contains(&xi)).unwrap();
                            let rep = &gl.category.objects[reps[comp]];
                            for y in &gr.category.objects {
                                let (z, class) = f.compose_classes(x, y).unwrap();
                                let (_, rep_class) = f.compose_classes(rep, y).unwrap();
                                assert_eq!((z.from, z.to), (a, c));
                                assert_eq!(
                                    class,
                                    rep_class,
                                    "{name}: {} * {}",
                                    x.display(&f.complex),
                                    y.display(&f.complex)
                                );
                            }
                        }
                    }
                }
                for gr in &right.grades {
                    let reps: Vec<usize> = gr.components.iter().map(|comp| comp[0]).collect();
                    for gl in &left.grades {
                        for x in &gl.category.objects {
                            for (yi, y) in gr.category.objects.iter().enumerate() {
                                let comp = gr.components.iter().position(|comp| comp.contains(&yi)).unwrap();
                                let rep = &gr.category.objects[reps[comp]];
                                assert_eq!(
                                    f.compose_classes(x, y).unwrap().1,
                                    f.compose_classes(x, rep).unwrap().1,
                                    "{name}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn proper_complexes_see_chains_through_vertices() {
    let mut checked = 0;
    for (name, f) in small_flows() {
        let k = &f.complex;
        if !is_proper(k).proper {
            continue;
        }
        checked += 1;
        for space in f.spaces.values() {
            let mut seen: HashSet<Vec<(CellRef, CellRef)>> = HashSet::new();
            for g in &space.grades {
                for o in &g.category.objects {
                    let ends: Vec<_> = o.cells.iter().map(|&c| (k.initial_vertex(c), k.final_vertex(c))).collect();
                    assert!(seen.insert(ends), "{name}: {}", o.display(k));
                }
            }
        }
    }
    assert!(checked >= 10);
}

#[test]
fn cube_path_spaces_are_contractible() {
    for n in 1..=4 {
        let f = natural_cube_flow(n);
        for space in f.spaces.values() {
            for g in &space.grades {
                assert!(g.homology.is_point(), "n={n}");
            }
            // a single grade: the Hamming distance between the endpoints
            assert_eq!(space.grades.len(), 1);
        }
    }
}

#[test]
fn loop_needs_a_grade_bound() {
    let k = loop_complex();
    let v = k.vertex("v").unwrap();
    assert!(matches!(path_space_model(&k, v, v, None), Err(Error::GradeBoundRequired)));
    let m = path_space_model(&k, v, v, Some(5)).unwrap();
    assert_eq!(m.pi0(), 5);
    assert!(deadlock_states(&k, v, v).unwrap().is_empty());
}
