use flagconfig::{fg_coords, reconstruct, validate_tuple, FGCoords, FlagTuple, Triangulation};
use flows::*;
use invariants::triple_ratio;
use projcore::Flag;
use proptest::prelude::*;
use std::f64::consts::TAU;

fn conic_tuple(n: usize) -> FlagTuple {
    let flags = (0..n)
        .map(|i| {
            let th = TAU * i as f64 / n as f64;
            let (c, s) = (th.cos(), th.sin());
            Flag::from_coords([c, s, 1.0], [c, s, -1.0]).unwrap()
        })
        .collect();
    validate_tuple(flags).unwrap()
}

fn coords(t: &FlagTuple, tri: &Triangulation) -> FGCoords {
    fg_coords(t, tri).unwrap()
}

#[test]
fn eruption_scales_the_anchor_triple() {
    let t = conic_tuple(3);
    let e = eruption(&t, (0, 1, 2), 2f64.ln()).unwrap();
    let f = e.flags();
    assert!((triple_ratio(&f[0], &f[1], &f[2]).unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(eruption(&t, (0, 1, 2), 0.0).unwrap(), t);
}

#[test]
fn eruption_on_a_nonagon() {
    let t = conic_tuple(9);
    let tri = Triangulation::new(
        9,
        vec![
            [0, 3, 6],
            [0, 1, 3],
            [1, 2, 3],
            [3, 4, 6],
            [4, 5, 6],
            [0, 6, 8],
            [6, 7, 8],
        ],
    )
    .unwrap();
    let before = coords(&t, &tri);
    let after = coords(&eruption(&t, (0, 3, 6), 0.7).unwrap(), &tri);
    let mut expect = before.clone();
    *expect.tau.get_mut(&[0, 3, 6]).unwrap() += 0.7;
    assert!(
        after.max_diff(&expect) < 1e-12,
        "{}",
        after.max_diff(&expect)
    );
}

#[test]
fn eruption_rejects_bad_anchors() {
    let t = conic_tuple(6);
    assert!(matches!(
        eruption(&t, (0, 4, 2), 1.0),
        Err(Error::InvalidAnchors(_))
    ));
    assert!(matches!(
        eruption(&t, (0, 1, 6), 1.0),
        Err(Error::InvalidAnchors(_))
    ));
    assert!(matches!(
        shear(&t, (2, 2), 1.0),
        Err(Error::InvalidAnchors(_))
    ));
}

#[test]
fn shear_and_bulge_on_the_square() {
    let t = conic_tuple(4);
    let tri = Triangulation::fan(4).unwrap();
    let c = coords(&shear(&t, (0, 2), 1.0).unwrap(), &tri);
    assert!((c.sigma(0, 2).unwrap() + 1.0).abs() < 1e-12);
    assert!((c.sigma(2, 0).unwrap() + 1.0).abs() < 1e-12);
    let c = coords(&bulge(&t, (0, 2), 1.0).unwrap(), &tri);
    assert!((c.sigma(0, 2).unwrap() - 1.0).abs() < 1e-12);
    assert!((c.sigma(2, 0).unwrap() + 1.0).abs() < 1e-12);
    for v in c.tau.values() {
        assert!(v.abs() < 1e-12);
    }
    assert_eq!(shear(&t, (0, 2), 0.0).unwrap(), t);
    assert_eq!(bulge(&t, (0, 2), 0.0).unwrap(), t);
}

#[test]
fn shear_leaves_one_sided_edges_alone() {
    let t = conic_tuple(8);
    let tri = Triangulation::new(
        8,
        vec![
            [0, 1, 3],
            [1, 2, 3],
            [0, 3, 4],
            [0, 4, 7],
            [4, 5, 7],
            [5, 6, 7],
        ],
    )
    .unwrap();
    let before = coords(&t, &tri);
    let after = coords(&shear(&t, (0, 4), 1.3).unwrap(), &tri);
    assert!((after.sigma(1, 3).unwrap() - before.sigma(1, 3).unwrap()).abs() < 1e-10);
    assert!((after.sigma(3, 1).unwrap() - before.sigma(3, 1).unwrap()).abs() < 1e-10);
}

#[test]
fn shear_and_bulge_commute_exactly() {
    let t = reconstruct(
        &FGCoords::zero(&Triangulation::fan(6).unwrap()),
        &Triangulation::fan(6).unwrap(),
    )
    .unwrap();
    let a = bulge(&shear(&t, (1, 4), 0.8).unwrap(), (1, 4), -0.3).unwrap();
    let b = shear(&bulge(&t, (1, 4), -0.3).unwrap(), (1, 4), 0.8).unwrap();
    for (x, y) in a.flags().iter().zip(b.flags()) {
        assert!(x.approx_eq(y, 1e-13));
    }
}

#[test]
fn flow_spec_text() {
    let e: FlowSpec = "eruption:1,4,7@0.5".parse().unwrap();
    assert_eq!(e, FlowSpec::new(FlowKind::Eruption(0, 3, 6), 0.5));
    let s: FlowSpec = "shear:1,3@-2".parse().unwrap();
    assert_eq!(s, FlowSpec::new(FlowKind::Shear(0, 2), -2.0));
    assert_eq!(s.to_string(), "shear:1,3@-2");
    assert_eq!(e.to_string().parse::<FlowSpec>().unwrap(), e);
    for bad in [
        "shear:1@1",
        "eruption:1,2@1",
        "twist:1,2@1",
        "shear:0,2@1",
        "shear:1,2",
        "bulge:1,2@x",
        "bulge:1,2@inf",
    ] {
        assert!(bad.parse::<FlowSpec>().is_err(), "{bad}");
    }
}

#[test]
fn transition_examples() {
    let tri = Triangulation::fan(4).unwrap();
    let c1 = FGCoords::zero(&tri);
    for f in solve_transition(&c1, &c1, &tri).unwrap() {
        assert_eq!(f.time, 0.0);
    }
    let mut c2 = c1.clone();
    *c2.sigma.get_mut(&(0, 2)).unwrap() = 1.0;
    let sched = solve_transition(&c1, &c2, &tri).unwrap();
    assert!(sched.contains(&FlowSpec::new(FlowKind::Shear(0, 2), -0.5)));
    assert!(sched.contains(&FlowSpec::new(FlowKind::Bulge(0, 2), 0.5)));
}

#[test]
fn hexagon_transition() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(6);
    let tri = Triangulation::new(6, vec![[0, 1, 2], [0, 2, 4], [2, 3, 4], [0, 4, 5]]).unwrap();
    let mut draw = || {
        let mut c = FGCoords::zero(&tri);
        for v in c.sigma.values_mut().chain(c.tau.values_mut()) {
            *v = rng.gen_range(-1.0..1.0);
        }
        c
    };
    let (c1, c2) = (draw(), draw());
    let sched = solve_transition(&c1, &c2, &tri).unwrap();
    let t = apply_all(&reconstruct(&c1, &tri).unwrap(), &sched).unwrap();
    assert!(coords(&t, &tri).max_diff(&c2) < 1e-8);
}

fn triangulation(n: usize) -> impl Strategy<Value = Triangulation> {
    prop::collection::vec(0.0f64..1.0, n).prop_map(move |r| {
        let mut tris = Vec::new();
        let mut stack = vec![(0..n).collect::<Vec<_>>()];
        let mut ri = 0;
        while let Some(poly) = stack.pop() {
            let m = poly.len();
            if m < 3 {
                continue;
            }
            let k = 1 + ((r[ri % n] * (m - 2) as f64) as usize).min(m - 3);
            ri += 1;
            tris.push([poly[0], poly[k], poly[m - 1]]);
            stack.push(poly[..=k].to_vec());
            stack.push(poly[k..].to_vec());
        }
        Triangulation::new(n, tris).unwrap()
    })
}

/// A random positive tuple with a triangulation of its polygon.
fn setup() -> impl Strategy<Value = (FlagTuple, Triangulation)> {
    (4usize..=10)
        .prop_flat_map(|n| {
            (
                triangulation(n),
                prop::collection::vec(-1.0f64..1.0, 3 * n - 8),
            )
        })
        .prop_map(|(tri, v)| {
            let mut c = FGCoords::zero(&tri);
            for (x, y) in c.sigma.values_mut().chain(c.tau.values_mut()).zip(v) {
                *x = y;
            }
            (reconstruct(&c, &tri).unwrap(), tri)
        })
}

/// One flow anchored on the triangulation, picked by `pick`.
fn flow_on(tri: &Triangulation, pick: usize, kind: usize, s: f64) -> FlowSpec {
    let e = tri.internal_edges();
    let t = tri.triangles();
    match kind % 3 {
        0 => {
            let [a, b, c] = t[pick % t.len()];
            FlowSpec::new(FlowKind::Eruption(a, b, c), s)
        }
        1 => {
            let (i, j) = e[pick % e.len()];
            FlowSpec::new(FlowKind::Shear(i, j), s)
        }
        _ => {
            let (i, j) = e[pick % e.len()];
            FlowSpec::new(FlowKind::Bulge(i, j), s)
        }
    }
}

/// The coordinate change a flow should produce.
fn expected(c: &FGCoords, f: &FlowSpec) -> FGCoords {
    let mut c = c.clone();
    let s = f.time;
    match f.kind {
        FlowKind::Eruption(a, b, k) => *c.tau.get_mut(&[a, b, k]).unwrap() += s,
        FlowKind::Shear(i, j) => {
            *c.sigma.get_mut(&(i, j)).unwrap() -= s;
            *c.sigma.get_mut(&(j, i)).unwrap() -= s;
        }
        FlowKind::Bulge(i, j) => {
            *c.sigma.get_mut(&(i, j)).unwrap() += s;
            *c.sigma.get_mut(&(j, i)).unwrap() -= s;
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn flows_are_sparse_in_coordinates((t, tri) in setup(), pick in 0usize..20, kind in 0usize..3, s in -2.0f64..2.0) {
        let f = flow_on(&tri, pick, kind, s);
        let out = apply(&t, &f).unwrap();
        let d = coords(&out, &tri).max_diff(&expected(&coords(&t, &tri), &f));
        prop_assert!(d < 1e-9, "{} {}", f, d);
    }

    #[test]
    fn flows_on_one_triangulation_commute((t, tri) in setup(), p in (0usize..20, 0usize..20), k in (0usize..3, 0usize..3), s in (-1.5f64..1.5, -1.5f64..1.5)) {
        let f = flow_on(&tri, p.0, k.0, s.0);
        let g = flow_on(&tri, p.1, k.1, s.1);
        let fg = coords(&apply(&apply(&t, &g).unwrap(), &f).unwrap(), &tri);
        let gf = coords(&apply(&apply(&t, &f).unwrap(), &g).unwrap(), &tri);
        prop_assert!(fg.max_diff(&gf) < 1e-9);
    }

    #[test]
    fn eruption_commutes_with_its_boundary_edges((t, tri) in setup(), p in 0usize..20, side in 0usize..3, bulging in any::<bool>(), s in (-1.5f64..1.5, -1.5f64..1.5)) {
        let [a, b, c] = tri.triangles()[p % tri.triangles().len()];
        let (i, j) = [(a, b), (b, c), (a, c)][side];
        let e = FlowSpec::new(FlowKind::Eruption(a, b, c), s.0);
        let g = FlowSpec::new(if bulging { FlowKind::Bulge(i, j) } else { FlowKind::Shear(i, j) }, s.1);
        let x = apply(&apply(&t, &g).unwrap(), &e).unwrap();
        let y = apply(&apply(&t, &e).unwrap(), &g).unwrap();
        let n = t.len();
        let full = Triangulation::fan(n).unwrap();
        prop_assert!(coords(&x, &full).max_diff(&coords(&y, &full)) < 1e-9);
    }

    #[test]
    fn flow_law((t, tri) in setup(), pick in 0usize..20, kind in 0usize..3, s in (-1.5f64..1.5, -1.5f64..1.5)) {
        let f1 = flow_on(&tri, pick, kind, s.0);
        let f2 = flow_on(&tri, pick, kind, s.1);
        let both = flow_on(&tri, pick, kind, s.0 + s.1);
        let full = Triangulation::fan(t.len()).unwrap();
        let a = coords(&apply(&apply(&t, &f2).unwrap(), &f1).unwrap(), &full);
        let b = coords(&apply(&t, &both).unwrap(), &full);
        prop_assert!(a.max_diff(&b) < 1e-9);
    }

    #[test]
    fn eruption_scales_any_ordered_triple((t, _tri) in setup(), r in prop::array::uniform3(0usize..100), s in -2.0f64..2.0) {
        let n = t.len();
        let mut idx = r.map(|x| x % n);
        idx.sort_unstable();
        prop_assume!(idx[0] < idx[1] && idx[1] < idx[2]);
        let rot = r[0] % 3;
        let [a, b, c] = [idx[rot], idx[(rot + 1) % 3], idx[(rot + 2) % 3]];
        let f = t.flags();
        let g = eruption(&t, (a, b, c), s).unwrap();
        let h = g.flags();
        let ratio = triple_ratio(&h[a], &h[b], &h[c]).unwrap() / triple_ratio(&f[a], &f[b], &f[c]).unwrap();
        prop_assert!((ratio.ln() - s).abs() < 1e-9);
    }

    #[test]
    fn triples_inside_a_moving_sector_keep_their_ratio((t, _tri) in setup(), r in prop::array::uniform2(0usize..100), s in -2.0f64..2.0, bulging in any::<bool>()) {
        let n = t.len();
        let (i, j) = (r[0] % n, r[1] % n);
        prop_assume!(i != j);
        let out = if bulging { bulge(&t, (i, j), s) } else { shear(&t, (i, j), s) }.unwrap();
        let (f, g) = (t.flags(), out.flags());
        for (from, to) in [(i, j), (j, i)] {
            let arc: Vec<usize> = (1..n).map(|k| (from + k) % n).take_while(|k| *k != to).collect();
            for x in 0..arc.len() {
                for y in x + 1..arc.len() {
                    for z in y + 1..arc.len() {
                        let (a, b, c) = (arc[x], arc[y], arc[z]);
                        let d = triple_ratio(&g[a], &g[b], &g[c]).unwrap() / triple_ratio(&f[a], &f[b], &f[c]).unwrap();
                        prop_assert!((d - 1.0).abs() < 1e-9, "{}", d);
                    }
                }
            }
        }
    }
}
