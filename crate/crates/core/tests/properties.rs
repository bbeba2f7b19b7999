mod common;

use proptest::prelude::*;
use rectcover::cli::io::{verify_cover, CoverFile, InstanceFile, Verdict};
use rectcover::generate::{generate, GeneratorKind, GeneratorParams};
use rectcover::solvers::solve;
use rectcover::{Algorithm, Rational, Rect, RectFamily, SolverConfig};

use common::uncovered_pair;

fn kind() -> impl Strategy<Value = GeneratorKind> {
    prop_oneof![
        Just(GeneratorKind::Uniform),
        Just(GeneratorKind::NonCrossing),
        Just(GeneratorKind::TriangleFree),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instance_files_round_trip(kind in kind(), n in 0usize..25, seed in any::<u64>(), weighted in any::<bool>()) {
        let p = GeneratorParams { weighted, ..GeneratorParams::default() };
        let fam: RectFamily<Rational> = generate(kind, n, seed, &p).unwrap();
        let inst = InstanceFile::from_family("p", &fam, weighted);
        let text = inst.to_json();
        let back: InstanceFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_family().unwrap(), fam);
        prop_assert_eq!(InstanceFile::from_family("p", &generate(kind, n, seed, &p).unwrap(), weighted).to_json(), text);
    }

    #[test]
    fn arbitrary_rational_boxes_round_trip(boxes in proptest::collection::vec((-50i64..50, 1i64..40, -50i64..50, 1i64..40, 1i64..9), 0..10)) {
        let rects = boxes
            .iter()
            .enumerate()
            .map(|(i, &(x, w, y, h, d))| {
                let r = |v: i64| Rational::new(v, d);
                let mut b = Rect::unit(i as u64, r(x), r(x + w), r(y), r(y + h)).unwrap();
                b.weight = Rational::new(w, d);
                b
            })
            .collect();
        let fam = RectFamily::new(rects).unwrap();
        let inst = InstanceFile::from_family("q", &fam, true);
        let back: InstanceFile = serde_json::from_str(&inst.to_json()).unwrap();
        prop_assert_eq!(back.to_family().unwrap(), fam);
    }
}

/// Every solver's cover passes the file-level verifier on a 500-run corpus.
#[test]
fn verify_accepts_solver_covers() {
    let config = SolverConfig::new(Rational::new(1, 4)).unwrap();
    let mut runs = 0;
    for seed in 0..125u64 {
        let kind = [GeneratorKind::Uniform, GeneratorKind::NonCrossing, GeneratorKind::TriangleFree][(seed % 3) as usize];
        let n = 2 + (seed % 15) as usize;
        let unweighted: RectFamily<Rational> = generate(kind, n, seed, &GeneratorParams::default()).unwrap();
        let weighted = generate(kind, n, seed, &GeneratorParams { weighted: true, ..GeneratorParams::default() }).unwrap();
        let mut jobs = vec![
            (&unweighted, Algorithm::General),
            (&weighted, Algorithm::GeneralWeighted),
            (&weighted, Algorithm::Exact),
        ];
        if unweighted.find_crossing().is_none() {
            jobs.push((&unweighted, Algorithm::Eptas));
        } else {
            jobs.push((&unweighted, Algorithm::Exact));
        }
        for (fam, algorithm) in jobs {
            let res = solve(fam, algorithm, &config).unwrap();
            let file = CoverFile::from_result(&res);
            let verdict = verify_cover(fam, &file).unwrap();
            assert!(matches!(verdict, Verdict::Valid { .. }), "seed {seed} {algorithm}: {verdict:?}");
            assert!(uncovered_pair(fam, &res.cover).is_none());
            runs += 1;
        }
    }
    assert_eq!(runs, 500);
}
