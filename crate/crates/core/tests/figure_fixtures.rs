use std::time::Instant;

use xnum::fixtures::{fig1a, fig1b};
use xnum::planarity::{augment_anchored, is_anchored_planar, is_planar};
use xnum::pp::validate_pp;
use xnum::solver::{anchored_crossing_number_exact, pp_special_case, verify_anchored_drawing, SolveOptions};
use xnum::OmegaPoly;

#[test]
fn fig1a_is_planar_but_anchored_two() {
    let a = fig1a();
    assert!(is_planar(&a.graph).is_some());
    assert!(is_planar(&augment_anchored(&a).unwrap().graph).is_none());
    let t = Instant::now();
    let r = anchored_crossing_number_exact(&a, &SolveOptions::default()).unwrap();
    eprintln!("fig1a: {:?} in {:?}", r.stats, t.elapsed());
    assert_eq!(r.optimal_value(), Some(&OmegaPoly::constant(2)));
    assert!(verify_anchored_drawing(&a, r.witness.as_ref().unwrap()));
}

#[test]
fn fig1b_is_pp_with_value_four() {
    let p = fig1b();
    assert!(validate_pp(&p).is_empty());
    for part in p.parts() {
        assert!(is_anchored_planar(&p.base.restrict(part).0));
    }
    assert_eq!(pp_special_case(&p).unwrap(), Some(OmegaPoly::constant(4)));
    let t = Instant::now();
    let r = anchored_crossing_number_exact(&p.base, &SolveOptions::default()).unwrap();
    eprintln!("fig1b: {:?} in {:?}", r.stats, t.elapsed());
    assert_eq!(r.optimal_value(), Some(&OmegaPoly::constant(4)));
    assert!(verify_anchored_drawing(&p.base, r.witness.as_ref().unwrap()));
}
