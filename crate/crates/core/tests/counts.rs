use conics_core::conic_system::{dimension_from_degrees, Variant};
use conics_core::counting::{count_conics, count_conics_with_conics, expected_count, CountConfig, Method};
use num_traits::ToPrimitive;

fn run(ds: &[u32], variant: Variant, method: Method) -> conics_core::counting::CountReport {
    let md = dimension_from_degrees(ds).unwrap();
    let cfg = CountConfig {
        method,
        ..CountConfig::default()
    };
    count_conics(&md, variant, &cfg).unwrap()
}

#[test]
fn cubic_threefold_six_conics() {
    let r = run(&[3], Variant::Secant, Method::Auto);
    assert_eq!(r.count, Some(6));
    assert_eq!(r.method, Method::Resultant);
    assert!(r.passed(), "{r:#?}");
    assert_eq!(r.trials.len(), 9);
}

#[test]
fn two_quadrics_two_conics() {
    let r = run(&[2, 2], Variant::Secant, Method::Auto);
    assert_eq!(r.count, Some(2));
    assert_eq!(r.degree_profile, vec![1, 1, 2]);
    assert!(r.passed(), "{r:#?}");
}

#[test]
fn plane_conic_is_unique() {
    let r = run(&[2], Variant::Secant, Method::Auto);
    assert_eq!(r.count, Some(1));
    assert!(r.passed(), "{r:#?}");
}

#[test]
fn cubic_and_quadric_twelve_conics() {
    let r = run(&[3, 2], Variant::Secant, Method::Auto);
    assert_eq!(r.method, Method::Groebner);
    assert_eq!(r.count, Some(12));
    assert_eq!(r.degree_profile, vec![3, 2, 1, 1, 2]);
    assert!(r.passed(), "{r:#?}");
}

#[test]
fn tangent_variant_agrees() {
    for ds in [vec![3], vec![2, 2]] {
        let r = run(&ds, Variant::Tangent, Method::Auto);
        assert_eq!(r.count, Some(expected_count(&ds).to_u64().unwrap()));
        assert!(r.passed(), "{r:#?}");
    }
}

#[test]
fn groebner_and_resultant_agree_on_cubic() {
    let a = run(&[3], Variant::Secant, Method::Resultant);
    let b = run(&[3], Variant::Secant, Method::Groebner);
    assert_eq!(a.count, b.count);
    assert!(b.passed(), "{b:#?}");
}

#[test]
fn verified_conics_match_count() {
    let md = dimension_from_degrees(&[3]).unwrap();
    let (report, outcomes) = count_conics_with_conics(&md, Variant::Secant, &CountConfig::default()).unwrap();
    for o in &outcomes {
        let v = o.report.verification.as_ref().unwrap();
        assert_eq!(v.conics_verified as u64, o.report.count);
        assert!(o.conics.iter().all(|c| c.verified));
    }
    assert_eq!(report.verified, Some(true));
    assert_eq!(report.all_solutions_verified, Some(true));
}

#[test]
fn quartic_fourfold_seventy_two_conics() {
    let r = run(&[4], Variant::Secant, Method::Auto);
    assert_eq!(r.method, Method::Groebner);
    assert_eq!(r.count, Some(72));
    assert_eq!(r.degree_profile, vec![3, 4, 2, 3]);
    assert!(r.passed(), "{r:#?}");
}

#[test]
fn report_round_trips_through_json() {
    let r = run(&[2, 2], Variant::Secant, Method::Auto);
    let text = serde_json::to_string(&r).unwrap();
    let back: conics_core::counting::CountReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["variant"], "secant");
    assert_eq!(v["method"], "resultant");
}
