use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sispace::wavefront::{wf_conv_bound, wf_fgsi_conv_bound, wf_member, wf_prod_bound, wf_shift_bound, Cone, WFItem, WFSet};
use sispace::Error;

// Raw description kept beside each random set so the oracle never touches the library's cone arithmetic.
#[derive(Clone, Debug)]
struct Raw {
    dim: usize,
    items: Vec<(Vec<f64>, Vec<(f64, f64)>, bool)>,
}

const STEP: f64 = 22.5;

fn dirs(dim: usize) -> Vec<f64> {
    if dim == 1 {
        vec![0.0, 180.0]
    } else {
        (0..16).map(|i| i as f64 * STEP).collect()
    }
}

fn vec_of(dim: usize, deg: f64) -> Vec<f64> {
    if dim == 1 {
        vec![if deg == 0.0 { 1.0 } else { -1.0 }]
    } else {
        vec![deg.to_radians().cos(), deg.to_radians().sin()]
    }
}

fn in_arcs(arcs: &[(f64, f64)], deg: f64) -> bool {
    arcs.iter().any(|&(s, l)| (deg - s).rem_euclid(360.0) <= l + 1e-9)
}

fn random_raw(rng: &mut StdRng, dim: usize) -> Raw {
    let n = rng.gen_range(0..=4);
    let items = (0..n)
        .map(|_| {
            let base: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2i32..=2) as f64 * 0.5).collect();
            let arcs: Vec<(f64, f64)> = if dim == 1 {
                match rng.gen_range(0..3) {
                    0 => vec![(0.0, 0.0)],
                    1 => vec![(180.0, 0.0)],
                    _ => vec![(0.0, 0.0), (180.0, 0.0)],
                }
            } else {
                (0..rng.gen_range(1..=2)).map(|_| (rng.gen_range(0..16) as f64 * STEP, rng.gen_range(0..=8) as f64 * STEP)).collect()
            };
            (base, arcs, rng.gen_bool(0.3))
        })
        .collect();
    Raw { dim, items }
}

fn build(raw: &Raw) -> WFSet {
    let items = raw
        .items
        .iter()
        .map(|(b, arcs, p)| {
            let cone = if raw.dim == 1 {
                Cone::D1 { plus: arcs.iter().any(|a| a.0 == 0.0), minus: arcs.iter().any(|a| a.0 == 180.0) }
            } else {
                Cone::arcs(&arcs.iter().map(|&(s, l)| [s, s + l]).collect::<Vec<_>>()).unwrap()
            };
            WFItem { base: [b[0], b.get(1).copied().unwrap_or(0.0)], cone, periodic: *p }
        })
        .collect();
    WFSet::new(raw.dim, items).unwrap()
}

fn lattice(dim: usize, r: i64) -> Vec<Vec<f64>> {
    if dim == 1 {
        (-r..=r).map(|k| vec![k as f64]).collect()
    } else {
        (-r..=r).flat_map(|a| (-r..=r).map(move |b| vec![a as f64, b as f64])).collect()
    }
}

fn at(base: &[f64], z: &[f64], periodic: bool) -> bool {
    base.iter().zip(z).all(|(b, z)| {
        let d = z - b;
        if periodic {
            (d - d.round()).abs() < 1e-9
        } else {
            d.abs() < 1e-9
        }
    })
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn short_arc_contains(t1: f64, t2: f64, deg: f64) -> bool {
    let d = (t2 - t1).rem_euclid(360.0);
    if d <= 180.0 - 1e-9 {
        (deg - t1).rem_euclid(360.0) <= d + 1e-9
    } else if d >= 180.0 + 1e-9 {
        (deg - t2).rem_euclid(360.0) <= 360.0 - d + 1e-9
    } else {
        false
    }
}

fn agree(out: &WFSet, queries: &[Vec<f64>], dim: usize, brute: impl Fn(&[f64], f64) -> bool) {
    let mut zs: Vec<Vec<f64>> = queries.to_vec();
    for it in out.items() {
        for k in lattice(dim, 3) {
            zs.push(add(&it.base[..dim], &k));
        }
    }
    for z in &zs {
        for deg in dirs(dim) {
            let lib = wf_member(out, z, &vec_of(dim, deg), 100);
            assert_eq!(lib, brute(z, deg), "z={z:?} θ={deg} out={out:?}");
        }
    }
}

#[test]
fn bounds_equal_set_builder_enumeration() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut antipodal_seen = 0;
    for case in 0..100 {
        let dim = 1 + case % 2;
        let (ra, rb) = (random_raw(&mut rng, dim), random_raw(&mut rng, dim));
        let (a, b) = (build(&ra), build(&rb));
        let mut queries = Vec::new();
        for (x, _, _) in &ra.items {
            for (y, _, _) in &rb.items {
                for k in lattice(dim, 3) {
                    queries.push(add(&add(x, y), &k));
                    queries.push(add(x, &k));
                    queries.push(add(y, &k));
                }
            }
        }

        let conv = wf_conv_bound(&a, &b).unwrap();
        assert_eq!(conv, wf_conv_bound(&b, &a).unwrap());
        agree(&conv, &queries, dim, |z, deg| {
            ra.items.iter().any(|(x, ca, pa)| {
                rb.items.iter().any(|(y, cb, pb)| in_arcs(ca, deg) && in_arcs(cb, deg) && at(&add(x, y), z, *pa || *pb))
            })
        });

        let fg = wf_fgsi_conv_bound(&[a.clone()], &[b.clone()]).unwrap();
        agree(&fg, &queries, dim, |z, deg| {
            ra.items.iter().any(|(x, ca, _)| rb.items.iter().any(|(y, cb, _)| in_arcs(ca, deg) && in_arcs(cb, deg) && at(&add(x, y), z, true)))
        });

        let sh = wf_shift_bound(&a);
        assert_eq!(wf_shift_bound(&sh), sh);
        agree(&sh, &queries, dim, |z, deg| ra.items.iter().any(|(x, c, _)| in_arcs(c, deg) && at(x, z, true)));

        // a base point z is common to two items when it lies in both point sets
        let antipodal = queries.iter().any(|z| {
            ra.items.iter().any(|(x, ca, pa)| {
                rb.items.iter().any(|(y, cb, pb)| {
                    at(x, z, *pa) && at(y, z, *pb) && dirs(dim).iter().any(|&d| in_arcs(ca, d) && in_arcs(cb, (d + 180.0) % 360.0))
                })
            })
        });
        match wf_prod_bound(&a, &b) {
            Err(Error::ProductUndefined { .. }) => {
                assert!(antipodal, "case {case}");
                antipodal_seen += 1;
            }
            Err(e) => panic!("{e}"),
            Ok(prod) => {
                assert!(!antipodal, "case {case}");
                agree(&prod, &queries, dim, |z, deg| {
                    let only_a = ra.items.iter().any(|(x, c, p)| at(x, z, *p) && in_arcs(c, deg));
                    let only_b = rb.items.iter().any(|(y, c, p)| at(y, z, *p) && in_arcs(c, deg));
                    let both = ra.items.iter().any(|(x, ca, pa)| {
                        rb.items.iter().any(|(y, cb, pb)| {
                            at(x, z, *pa)
                                && at(y, z, *pb)
                                && dirs(dim).iter().any(|&t1| {
                                    in_arcs(ca, t1) && dirs(dim).iter().any(|&t2| in_arcs(cb, t2) && short_arc_contains(t1, t2, deg))
                                })
                        })
                    });
                    only_a || only_b || both
                });
            }
        }
    }
    assert!(antipodal_seen > 0);
}

#[test]
fn periodic_product_composition() {
    // WF(g f) ⊆ ∪_i {(x + k, ξ) : (x, ξ) ∈ WF(g φ_i)}
    let mut rng = StdRng::seed_from_u64(77);
    for _ in 0..30 {
        let dim = 2;
        let g = build(&random_raw(&mut rng, dim));
        let phis: Vec<WFSet> = (0..2).map(|_| build(&random_raw(&mut rng, dim))).collect();
        let per: Vec<WFSet> = phis.iter().filter_map(|p| wf_prod_bound(&g, p).ok()).collect();
        let union = WFSet::new(dim, per.iter().flat_map(|w| wf_shift_bound(w).items().to_vec()).collect()).unwrap();
        for w in &per {
            for it in w.items() {
                for k in lattice(dim, 3) {
                    let z = add(&it.base[..dim], &k);
                    for deg in dirs(dim) {
                        let xi = vec_of(dim, deg);
                        if it.cone.contains(&xi) {
                            assert!(wf_member(&union, &z, &xi, 100));
                        }
                    }
                }
            }
        }
    }
}
