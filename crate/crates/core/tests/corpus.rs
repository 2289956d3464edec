use std::fs;
use std::path::PathBuf;

use periodica::{
    check_decomposition, ingest_ranks, jones_kauffman, kh_ranks, murasugi_verify, przytycki_check, strengthened_check,
    Budget, LaurentPoly, LinkDiagram, Outcome, PeriodicTangleCode, PlanarDiagram, Tangle,
};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn pd(name: &str) -> PlanarDiagram {
    PlanarDiagram::parse(&fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn ptc(name: &str) -> PeriodicTangleCode {
    PeriodicTangleCode::parse(&fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn files(ext: &str) -> Vec<String> {
    let mut out: Vec<String> = fs::read_dir(data(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(ext))
        .collect();
    out.sort();
    out
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

#[test]
fn known_jones_polynomials() {
    let b = Budget::default();
    let cases = [
        ("unknot.pd", "q + q^-1"),
        ("hopf.pd", "1 + q^2 + q^4 + q^6"),
        ("trefoil.pd", "q + q^3 + q^5 - q^9"),
        ("trefoil_kink.pd", "q + q^3 + q^5 - q^9"),
        ("figure8.pd", "q^5 + q^-5"),
        ("10_61.pd", "q^-5 + 2q^-1 - q - q^5 + q^9 - q^11 + q^13 - q^15 + q^17"),
    ];
    for (name, expected) in cases {
        assert_eq!(jones_kauffman(&pd(name), &b).unwrap(), poly(expected), "{name}");
    }
}

#[test]
fn khovanov_euler_characteristic_is_jones() {
    let b = Budget::default();
    for name in files(".pd") {
        let d = pd(&name);
        let j = jones_kauffman(&d, &b).unwrap();
        let kh = kh_ranks(&d, &b).unwrap();
        assert_eq!(kh.euler_characteristic(), j, "{name}");
    }
}

#[test]
fn khovanov_ignores_a_kink() {
    let b = Budget::default();
    let a: Vec<_> = kh_ranks(&pd("trefoil.pd"), &b).unwrap().entries().collect();
    let c: Vec<_> = kh_ranks(&pd("trefoil_kink.pd"), &b).unwrap().entries().collect();
    assert_eq!(a, c);
}

#[test]
fn two_strand_torus_knots_are_thin_with_unit_ranks() {
    let b = Budget::default();
    for name in ["trefoil.pd", "t5_2.pd", "t9_2.pd"] {
        let kh = kh_ranks(&pd(name), &b).unwrap();
        assert_eq!(kh.max_rank(), 1, "{name}");
    }
}

#[test]
fn ten_sixty_one_matches_bundled_table() {
    let b = Budget::default();
    let d = pd("10_61.pd");
    let j = jones_kauffman(&d, &b).unwrap();
    let ingested = ingest_ranks(fs::File::open(data("10_61_ranks.csv")).unwrap(), Some(&j)).unwrap();
    let computed = kh_ranks(&d, &b).unwrap();
    assert_eq!(ingested.entries().collect::<Vec<_>>(), computed.entries().collect::<Vec<_>>());
    assert_eq!(ingested.len(), 18);
    assert_eq!(ingested.max_rank(), 3);
}

#[test]
fn ten_sixty_one_five_periodicity() {
    let b = Budget::default();
    let d = pd("10_61.pd");
    let j = jones_kauffman(&d, &b).unwrap();
    let ranks = kh_ranks(&d, &b).unwrap();
    assert_eq!(przytycki_check(&j, 5, 1).unwrap().result, Outcome::NoObstruction);
    let v = strengthened_check(&j, &ranks, 5, 1).unwrap();
    assert_eq!(v.s, Some(1));
    assert_eq!(v.result, Outcome::Obstructed);
}

#[test]
fn pd_export_round_trips() {
    let b = Budget::default();
    for name in files(".pd") {
        let d = pd(&name);
        let again = PlanarDiagram::parse(&d.to_text()).unwrap();
        assert_eq!(again.crossings(), d.crossings(), "{name}");
        assert_eq!(jones_kauffman(&again, &b).unwrap(), jones_kauffman(&d, &b).unwrap());
    }
}

#[test]
fn decomposition_holds_on_every_code() {
    let b = Budget::default();
    let names = files(".ptc");
    assert!(names.len() >= 30);
    for name in names {
        let report = check_decomposition(&ptc(&name), &b).unwrap();
        assert!(report.passed, "{name}");
    }
}

#[test]
fn codes_close_up_to_the_bundled_pds() {
    let b = Budget::default();
    for (code, diagram) in [("trefoil.ptc", "trefoil.pd"), ("t5_2.ptc", "t5_2.pd"), ("t9_2.ptc", "t9_2.pd")] {
        let full = ptc(code).quotient(0).unwrap();
        assert_eq!(jones_kauffman(&full, &b).unwrap(), jones_kauffman(&pd(diagram), &b).unwrap());
        assert_eq!(full.crossing_counts(), pd(diagram).crossing_counts());
    }
}

#[test]
fn bundled_codes_equal_builder_output() {
    let trefoil = Tangle::braid(2, &[(0, true)], &[1, 1]).unwrap();
    assert_eq!(ptc("trefoil.ptc"), PeriodicTangleCode::new(3, 1, trefoil.clone()).unwrap());
    assert_eq!(ptc("t5_2.ptc"), PeriodicTangleCode::new(5, 1, trefoil.clone()).unwrap());
    assert_eq!(ptc("t9_2.ptc"), PeriodicTangleCode::new(3, 2, trefoil).unwrap());
    for p in [3u64, 5] {
        for k in 0..=2 {
            for f in 0..=2 {
                if k + f == 0 {
                    continue;
                }
                let t = Tangle::trivial(k, f);
                assert_eq!(ptc(&format!("unlink_k{k}f{f}_p{p}.ptc")), PeriodicTangleCode::new(p, 1, t.clone()).unwrap());
                assert_eq!(ptc(&format!("unlink_k{k}f{f}_p{p}_n2.ptc")), PeriodicTangleCode::new(p, 2, t).unwrap());
            }
        }
    }
}

#[test]
fn torus_knots_satisfy_murasugi() {
    let b = Budget::default();
    for name in ["trefoil.ptc", "t5_2.ptc", "t9_2.ptc"] {
        let v = murasugi_verify(&ptc(name), &b).unwrap();
        assert_eq!(v.result, Outcome::NoObstruction, "{name}");
    }
}
