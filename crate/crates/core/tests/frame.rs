use num_rational::BigRational;
use xnum::drawing::verify_drawing;
use xnum::frame::{build_frame, c1, c2, gamma, gamma_plus, normal_drawing, p0_weight, p1_weight, Frame, FrameParams, Move};
use xnum::planarity::is_anchored_planar;
use xnum::pp::validate_pp;
use xnum::OmegaPoly;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn w(e: u32) -> OmegaPoly {
    OmegaPoly::pow(e)
}

fn frame(k: usize) -> Frame {
    build_frame(FrameParams::symbolic(k)).unwrap()
}

/// P0 and P1 schedules written out from the edge-by-edge description.
fn p0_oracle(k: i64, i: i64) -> OmegaPoly {
    w(41) + OmegaPoly::term(i * (i + 1), 5 * k + 7, 30)
}

fn p1_oracle(k: i64, i: i64) -> OmegaPoly {
    let step = if i > k { OmegaPoly::term(2, 5, 35) } else { OmegaPoly::zero() };
    w(49) + step + OmegaPoly::term(i * (i + 2), 5 * k + 7, 30)
}

/// Weight of the normal drawing summed by crossing class.
fn normal_weight_oracle(k: usize) -> OmegaPoly {
    let ki = k as i64;
    let mut t = (w(48) + OmegaPoly::term(2, 1, 38) - w(34)) * w(41);
    let mut half = w(35) * p0_oracle(ki, ki + 1);
    for i in (1..=2 * ki + 1).filter(|&i| i != ki + 1) {
        half += w(30) * p0_oracle(ki, i);
    }
    half += (w(41) - w(40)) * p1_oracle(ki, 0);
    for i in 1..=2 * ki {
        half += w(30) * p1_oracle(ki, i);
    }
    t += OmegaPoly::constant(2) * half;
    t += w(48) * (OmegaPoly::term(3 * ki, 1, 4) - OmegaPoly::constant(ki - 1));
    t += OmegaPoly::term(3 * ki, 1, 4) * (OmegaPoly::term(2, 1, 38) + OmegaPoly::term(4, 5, 35));
    t
}

#[test]
fn schedules_match_examples() {
    assert_eq!(p0_weight(4, 0).unwrap(), w(41));
    assert_eq!(p0_weight(4, 1).unwrap(), w(41) + OmegaPoly::term(2, 27, 30));
    assert_eq!(p1_weight(4, 5).unwrap(), w(49) + OmegaPoly::term(2, 5, 35) + OmegaPoly::term(35, 27, 30));
    assert_eq!(p1_weight(4, 0).unwrap(), w(49));
    assert!(p0_weight(4, 10).is_err());
    assert!(p1_weight(2, 6).is_err());
    for k in 2..=6 {
        for i in 0..=2 * k + 1 {
            assert_eq!(p0_weight(k, i).unwrap(), p0_oracle(k as i64, i as i64));
            assert_eq!(p1_weight(k, i).unwrap(), p1_oracle(k as i64, i as i64));
        }
    }
}

#[test]
fn params_are_checked() {
    assert!(build_frame(FrameParams::symbolic(1)).is_err());
    let bad = FrameParams { k: 2, omega: Some(100.into()) };
    assert!(build_frame(bad).is_err());
    let good = FrameParams { k: 2, omega: Some(170.into()) };
    let f = build_frame(good).unwrap();
    for e in f.graph().edges() {
        assert!(e.weight.eval_u64(170).is_integer());
    }
}

#[test]
fn k2_shape() {
    let f = frame(2);
    let g = f.graph();
    assert_eq!(f.p0.len(), 11);
    let mut p0v: Vec<_> = f.p0.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
    p0v.sort_unstable();
    p0v.dedup();
    assert_eq!(p0v.len(), 12);
    let names: Vec<_> = f.instance.base.anchors.iter().map(|&a| g.name(a)).collect();
    assert_eq!(names, ["r2", "b4", "r4", "d1", "r0", "b0"]);
    assert_eq!(normal_drawing(&f).crossing_count(), 39);
}

#[test]
fn invariants_hold_for_small_k() {
    for k in 2..=6 {
        let f = frame(k);
        let g = f.graph();
        assert_eq!(f.p0.len(), 4 * k + 3);
        assert_eq!(f.p1.len(), 4 * k + 4);
        assert_eq!(f.p2.len(), 4 * k + 2);
        assert_eq!(f.c0.len(), 4 * k + 3);
        assert_eq!(f.top.len(), 7);
        assert_eq!(f.q.len(), 3 * k);
        let weight = |a: &str, b: &str| {
            let (u, v) = (g.vid(a), g.vid(b));
            g.edges().iter().find(|e| (e.u, e.v) == (u, v)).unwrap().weight.clone()
        };
        assert!(f.c0.iter().all(|&e| g.edge(e).weight == w(49)));
        assert!(f.top.iter().all(|&e| g.edge(e).weight == w(49)));
        assert_eq!(weight("b2", "c2"), w(48) + OmegaPoly::term(2, 1, 38) - w(34));
        assert_eq!(weight("r1", "r1'"), w(41) - w(40));
        assert_eq!(weight("r3", "r3'"), w(41) - w(40));
        assert_eq!(weight("b1", "c1"), w(35));
        assert_eq!(weight("b3", "c3"), w(35));
        assert_eq!(weight("c2", "d2"), w(48));
        assert_eq!(weight("d1", "d2"), w(49));
        let straps = f.red_verticals.iter().chain(&f.blue_verticals).filter(|&&e| g.edge(e).weight == w(30));
        assert_eq!(straps.count(), 8 * k);
        let (c1v, c3v) = (g.vid("c1"), g.vid("c3"));
        let mut inside = false;
        for &e in &f.p2 {
            if g.edge(e).u == c1v {
                inside = true;
            }
            let expect = if inside { w(38) } else { w(38) + OmegaPoly::term(4, 5, 35) };
            assert_eq!(g.edge(e).weight, expect);
            if g.edge(e).v == c3v {
                inside = false;
            }
        }
        for (a, b) in f.p0.iter().zip(f.p0.iter().rev()) {
            assert_eq!(g.edge(*a).weight, g.edge(*b).weight);
        }
        for (a, b) in f.p1.iter().zip(f.p1.iter().rev()) {
            assert_eq!(g.edge(*a).weight, g.edge(*b).weight);
        }
        for qp in &f.q {
            let ends = [qp.edges[0], *qp.edges.last().unwrap()];
            for &e in &qp.edges {
                let expect = if ends.contains(&e) || qp.family > 1 || qp.index == k { w(4) } else { w(4) - OmegaPoly::one() };
                assert_eq!(g.edge(e).weight, expect);
            }
        }
        assert!(validate_pp(&f.instance).is_empty());
        for part in f.instance.parts() {
            let (sub, _) = f.instance.base.restrict(part);
            assert_eq!(sub.anchors.len(), 3);
            assert!(is_anchored_planar(&sub));
        }
    }
}

#[test]
fn closed_forms() {
    assert_eq!(gamma(2).coeff(79), q(10, 1));
    assert_eq!(c1(2), q(512, 85));
    assert_eq!(c2(2), q(216, 17));
    for k in 2..=6 {
        assert_eq!(gamma_plus(k) - gamma(k), w(34) - w(30) - OmegaPoly::one());
    }
}

#[test]
fn c2_matches_its_summation() {
    for k in 2..=6i64 {
        let d = 5 * k + 7;
        let mut s = q(0, 1);
        for i in 1..=2 * k {
            s += q(i * (i + 2), d);
        }
        for i in 1..=2 * k + 1 {
            s += q(i * (i + 1), d);
        }
        s -= q((k + 1) * (k + 2), d);
        assert_eq!(s * q(2, 1), c2(k as usize));
    }
}

#[test]
fn c1_is_twice_its_summation() {
    for k in 2..=6i64 {
        let s = q(2 * k * 2, 5) + q(2 * (k + 1) * (k + 2), 5 * k + 7);
        assert_eq!(s * q(2, 1), c1(k as usize));
    }
}

#[test]
fn normal_drawing_weight() {
    for k in 2..=6 {
        let f = frame(k);
        let p = normal_drawing(&f);
        assert!(verify_drawing(f.graph(), &p));
        let got = p.weight(f.graph()).unwrap();
        assert_eq!(got, normal_weight_oracle(k));
        let residue = OmegaPoly::monomial(-c1(k) / q(2, 1), 65) + w(48);
        assert_eq!(&got - &gamma(k), residue);
    }
}

#[test]
fn perturbations_pay_at_least_their_bound() {
    for k in 2..=6 {
        let f = frame(k);
        assert!(f.perturbation_penalty(Move::Null).unwrap().is_zero());
        assert!(f.perturbation_penalty(Move::SwapInner(0)).is_err());
        assert!(f.perturbation_penalty(Move::BlueOverRed(2 * k + 1)).is_err());
        for i in 1..=2 * k {
            for mv in [Move::BlueOverRed(i), Move::RedOverBlue(i), Move::SwapInner(i), Move::SwapOuter(i)] {
                let p = f.perturbed_drawing(mv).unwrap();
                assert!(verify_drawing(f.graph(), &p), "{mv:?} at k={k}");
                let pen = f.perturbation_penalty(mv).unwrap();
                let bound = f.penalty_bound(mv).unwrap();
                assert!(pen.is_positive(), "{mv:?} at k={k}");
                assert!(pen >= bound, "{mv:?} at k={k}: {pen} < {bound}");
            }
        }
    }
}

#[test]
fn exchange_penalties_are_exact() {
    for k in 2..=6 {
        let f = frame(k);
        let d = 5 * k as i64 + 7;
        let low = OmegaPoly::term(1, d, 60);
        for i in (1..=2 * k).filter(|&i| i != k + 1) {
            let pen = f.perturbation_penalty(Move::SwapInner(i)).unwrap();
            assert_eq!(pen.truncate_below(60), low);
        }
        let across = f.perturbation_penalty(Move::SwapInner(k + 1)).unwrap();
        assert_eq!(across.coeff(65), q(6, 5 * d));
    }
}

#[test]
fn features_name_all_groups() {
    let f = frame(3);
    let feats = f.features();
    for key in ["P0", "P1", "P2", "C0", "R", "top", "Q1_1", "Q2_3", "Q3_2"] {
        assert!(feats.edges.contains_key(key), "{key}");
    }
    assert_eq!(feats.vertices["B2"], ["b0", "d1", "b4"]);
    let doc = f.document();
    let back = xnum::io::parse_graph(&xnum::io::serialize_graph(&doc)).unwrap();
    assert_eq!(back.graph.edge_count(), f.graph().edge_count());
    assert_eq!(back.features, feats);
}
