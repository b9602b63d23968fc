mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;

use qvsim::adqc::Interaction;
use qvsim::circuit::{Circuit, LogicalGate};
use qvsim::Complex64 as C;
use qvsim::harness::{
    initial_state, parse_circuit, report_layers, run_mode, serialize_circuit, CircuitFile, InitQv, McSpecChoice, Mode,
    RunOptions,
};

fn with_measures(mut c: Circuit, which: &[usize]) -> Circuit {
    for &t in which {
        c.push_measure(t).unwrap();
    }
    c
}

fn amps(doc: &qvsim::harness::ResultDocument) -> V {
    V::from_iterator(doc.amplitudes.len(), doc.amplitudes.iter().map(|a| C::new(a[0], a[1])))
}

fn compare(seed: u64) -> RunOptions {
    RunOptions { compare: true, seed: Some(seed), ..Default::default() }
}

#[test]
fn fourier_only_circuit_agrees_in_all_modes() {
    let mut c = Circuit::new(2, 2).unwrap();
    for t in [0, 1, 0, 0, 1] {
        c.push_gate(LogicalGate::F { t }).unwrap();
    }
    let file = CircuitFile::new(c.clone());
    let v0 = vec_of(&initial_state(&file).unwrap());
    let (want, _, _) = run_circuit(&c, &v0, &[]);
    for mode in [Mode::Direct, Mode::Adqc, Mode::MinControl] {
        for seed in 0..5 {
            let doc = run_mode(&file, mode, &compare(seed)).unwrap();
            assert!(doc.fidelity.unwrap() > 1.0 - 1e-10, "{mode:?}");
            assert!(fid(&amps(&doc), &want) > 1.0 - 1e-10, "{mode:?}");
        }
    }
}

#[test]
fn direct_mode_matches_matrix_oracle() {
    let mut r = rng(31);
    for d in [2, 3, 4] {
        for _ in 0..10 {
            let c = with_measures(random_circuit(d, 3, 15, false, &mut r), &[1]);
            let mut file = CircuitFile::new(c.clone());
            file.init = (0..3).map(|_| if r.random() { InitQv::Plus(r.random_range(0..d)) } else { InitQv::Basis(r.random_range(0..d)) }).collect();
            let doc = run_mode(&file, Mode::Direct, &RunOptions { seed: Some(r.random()), ..Default::default() }).unwrap();
            let outcomes: Vec<usize> = doc.measurements.iter().map(|m| m.value).collect();
            let (want, live, _) = run_circuit(&c, &vec_of(&initial_state(&file).unwrap()), &outcomes);
            assert_eq!(doc.qvs, live);
            assert!(fid(&amps(&doc), &want) > 1.0 - 1e-10);
        }
    }
}

#[test]
fn twenty_gate_d3_circuit_over_ten_branches() {
    let mut r = rng(32);
    let c = with_measures(random_circuit(3, 2, 20, false, &mut r), &[0]);
    let file = CircuitFile::new(c);
    let mut worst: f64 = 1.0;
    let mut branches = std::collections::HashSet::new();
    for seed in 0..10 {
        let doc = run_mode(&file, Mode::Adqc, &compare(seed)).unwrap();
        worst = worst.min(doc.fidelity.unwrap());
        branches.insert(doc.ancilla_log.iter().map(|e| e.outcome).collect::<Vec<_>>());
    }
    assert!(worst > 1.0 - 1e-10, "{worst}");
    assert_eq!(branches.len(), 10);
}

#[test]
fn adqc_variants_and_forcing_agree_with_oracle() {
    let mut r = rng(33);
    for (d, variant) in [(3, Interaction::E), (3, Interaction::CheckE), (4, Interaction::Hybrid { d_a: 4 }), (2, Interaction::CheckE)] {
        for _ in 0..5 {
            let mut file = CircuitFile::new(with_measures(random_circuit(d, 2, 12, false, &mut r), &[1]));
            file.variant = variant;
            file.force = (0..8).map(|_| r.random_range(0..d)).collect();
            let doc = run_mode(&file, Mode::Adqc, &compare(r.random())).unwrap();
            assert!(doc.compare_ok(), "{variant:?}");
            let head: Vec<usize> = doc.ancilla_log.iter().take(8).map(|e| e.outcome).collect();
            assert_eq!(head, file.force[..head.len()]);
            assert!(doc.ancilla_log.iter().take(8).all(|e| e.forced));
        }
    }
}

#[test]
fn mincontrol_matches_oracle() {
    let mut r = rng(34);
    for d in [2, 3, 5] {
        for clifford in [true, false] {
            for _ in 0..4 {
                let c = with_measures(random_circuit(d, 3, 12, clifford, &mut r), &[2]);
                let file = CircuitFile::new(c.clone());
                let doc = run_mode(&file, Mode::MinControl, &compare(r.random())).unwrap();
                assert!(doc.compare_ok());
                let expected = if c.has_cz() { "cz" } else { "universal" };
                assert!(doc.spec.as_deref().unwrap().starts_with(expected));
                let outcomes: Vec<usize> = doc.measurements.iter().map(|m| m.value).collect();
                let (want, live, _) = run_circuit(&c, &vec_of(&initial_state(&file).unwrap()), &outcomes);
                assert_eq!(doc.qvs, live);
                assert!(fid(&amps(&doc), &want) > 1.0 - 1e-10);
            }
        }
    }
}

#[test]
fn mincontrol_spec_choice() {
    let file = parse_circuit("dim 3\nqvs 1\ngate F 0\ngate R 0 [0.1,0.2,0.3]").unwrap();
    let pinned = RunOptions { compare: true, spec_seed: Some(7), mc_spec: McSpecChoice::Universal, ..Default::default() };
    let doc = run_mode(&file, Mode::MinControl, &pinned).unwrap();
    assert_eq!(doc.spec.as_deref(), Some("universal:7"));
    assert_eq!(doc.interactions, Some(4));
    assert!(doc.compare_ok());
    let cz = RunOptions { compare: true, mc_spec: McSpecChoice::Cz, ..Default::default() };
    assert!(run_mode(&file, Mode::MinControl, &cz).unwrap().compare_ok());
    // spec seed follows the run seed by default
    let doc = run_mode(&file, Mode::MinControl, &RunOptions { seed: Some(9), ..Default::default() }).unwrap();
    assert_eq!(doc.spec.as_deref(), Some("universal:9"));
}

#[test]
fn layer_reports() {
    let cz = parse_circuit("dim 3\nqvs 2\ngate CZ 0 1").unwrap();
    let rep = report_layers(&cz).unwrap();
    assert_eq!((rep.layers, rep.adaptive, rep.ancillas, rep.interactions), (9, 0, 7, 8));

    let mut r = rng(35);
    for d in [2, 3, 5] {
        let file = CircuitFile::new(random_circuit(d, 3, 50, true, &mut r));
        assert_eq!(report_layers(&file).unwrap().adaptive, 0);
    }
    let d3 = parse_circuit("dim 3\nqvs 1\ngate X 1 0\ngate D3 1 0").unwrap();
    assert!(report_layers(&d3).unwrap().adaptive >= 1);
}

#[test]
fn replay_is_byte_identical() {
    let mut r = rng(36);
    let file = CircuitFile::new(with_measures(random_circuit(3, 2, 20, false, &mut r), &[0, 1]));
    for mode in [Mode::Direct, Mode::Adqc, Mode::MinControl] {
        let a = run_mode(&file, mode, &compare(5)).unwrap().to_json();
        let b = run_mode(&file, mode, &compare(5)).unwrap().to_json();
        assert_eq!(a, b);
        assert!(!a.contains("-0.0,") && !a.contains("-0.0\n"));
    }
    let a = run_mode(&file, Mode::Adqc, &compare(5)).unwrap().to_json();
    let b = run_mode(&file, Mode::Adqc, &compare(6)).unwrap().to_json();
    assert_ne!(a, b);
}

#[test]
fn unsupported_runs_are_errors() {
    // d_a ∤ d cannot be compiled deterministically
    let f = parse_circuit("dim 2\nqvs 1\nvariant hybrid:3\ngate F 0").unwrap();
    assert!(run_mode(&f, Mode::Adqc, &RunOptions::default()).is_err());
    // forcing a zero-probability outcome
    let f = parse_circuit("dim 2\nqvs 1\nforce 1\nmeasure 0").unwrap();
    assert!(run_mode(&f, Mode::Direct, &RunOptions::default()).is_err());
}

fn arb_file() -> impl Strategy<Value = CircuitFile> {
    (2usize..6, 1usize..4, 0usize..25, any::<u64>(), 0u8..3, proptest::option::of(any::<u64>()), proptest::collection::vec(0usize..5, 0..4))
        .prop_map(|(d, n, len, seed, v, file_seed, force)| {
            let mut r = rng(seed);
            let mut c = random_circuit(d, n, len, false, &mut r);
            if r.random() {
                c.push_measure(r.random_range(0..n)).unwrap();
            }
            let mut f = CircuitFile::new(c);
            f.variant = match v {
                0 => Interaction::E,
                1 => Interaction::CheckE,
                _ => Interaction::Hybrid { d_a: r.random_range(2..7) },
            };
            f.init = (0..n).map(|_| if r.random() { InitQv::Plus(r.random_range(0..d)) } else { InitQv::Basis(r.random_range(0..d)) }).collect();
            f.seed = file_seed;
            f.force = force;
            f
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_then_parse_is_identity(f in arb_file()) {
        let text = serialize_circuit(&f);
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serialize_circuit(&back), text);
    }

    #[test]
    fn parse_never_panics(text in "[a-zA-Z0-9 +\\[\\],.:#\\n-]{0,120}") {
        let _ = parse_circuit(&text);
    }
}
