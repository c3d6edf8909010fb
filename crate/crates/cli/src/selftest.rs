//! Built-in golden test suite: the printed matrices and numbers that pin
//! down every convention in the toolkit, runnable from the installed
//! binary.

use std::process::ExitCode;

use ncgram::classify::{equivalent, Equivalence, SearchParams};
use ncgram::eulerform::SURFACE_RANK;
use ncgram::geometry::{FiberType, OrderSpec};
use ncgram::mutation::parse_word;
use ncgram::ncalgebra::{
    extended_gram, fat_point_multiplicity, gram_family, gram_family_blowup, gram_p2,
    gram_quadric, sklyanin_int, FatPointSpec, QuadraticPresentation,
};
use ncgram::{apply_word, GramMatrix, IntMatrix};

pub fn run() -> ExitCode {
    let mut all_ok = true;
    let mut check = |name: &str, ok: bool| {
        println!("{} - {name}", if ok { "ok  " } else { "FAIL" });
        all_ok &= ok;
    };

    let coxeter_golden =
        IntMatrix::from_rows(&[vec![-10, -6, -3], vec![15, 8, 3], vec![-6, -3, -1]]).unwrap();
    check("coxeter matrix of the plane", gram_p2().coxeter() == coxeter_golden);

    let serre_golden =
        IntMatrix::from_rows(&[vec![10, 6, 3], vec![-15, -8, -3], vec![6, 3, 1]]).unwrap();
    check("serre matrix of the plane", gram_p2().serre_matrix() == serre_golden);

    let axiom_suite = gram_quadric().check_surface_type(SURFACE_RANK).passes_surface_type
        && (0..=20).all(|m| {
            gram_family(m).check_surface_type(SURFACE_RANK).passes_surface_type
                && gram_family_blowup(m)
                    .check_surface_type(SURFACE_RANK)
                    .passes_surface_type
        })
        && !GramMatrix::identity(4)
            .check_surface_type(SURFACE_RANK)
            .passes_surface_type;
    check("surface-type axioms on the named matrices", axiom_suite);

    check("mutation chain endpoints and intermediates", chain_suite());

    let fat_table = [1, 2, 1, 4, 5, 2, 7, 8, 3, 10, 11, 4];
    let fat_ok = (1..=12)
        .zip(fat_table)
        .all(|(n, want)| fat_point_multiplicity(FatPointSpec::new(n).unwrap()) == want);
    check("fat point multiplicities", fat_ok);

    let del_pezzo_ok = (1..=12).all(|m| {
        OrderSpec::cubic(m).unwrap().is_del_pezzo().is_del_pezzo == (m <= 2)
    }) && OrderSpec::cubic(2).unwrap().generic_fiber_type().fiber_type == FiberType::HalfRuled
        && OrderSpec::cubic(3).unwrap().generic_fiber_type().fiber_type == FiberType::Elliptic;
    check("del Pezzo and fiber types of cubic orders", del_pezzo_ok);

    let commutative = QuadraticPresentation::commutative(3).unwrap();
    let hilbert_ok = commutative.graded_dims(5).unwrap() == vec![1, 3, 6, 10, 15, 21]
        && sklyanin_int(1, 2, 3).unwrap().graded_dims(4).unwrap() == vec![1, 3, 6, 10, 15]
        && sklyanin_int(1, 2, 3).unwrap().graded_dims_modular(4).unwrap()
            == vec![1, 3, 6, 10, 15];
    check("graded dimensions", hilbert_ok);

    let extended_ok = (1..=20).all(|s| extended_gram(s) == gram_family_blowup(s));
    check("extended Gram matrices match the blowup family", extended_ok);

    let params = SearchParams::default();
    let orbit_ok = matches!(
        equivalent(&gram_family_blowup(2), &gram_family(2), &params),
        Ok(Equivalence::Witness(_))
    );
    check("orbit search connects the family presentations", orbit_ok);

    if all_ok {
        println!("self-test passed");
        ExitCode::SUCCESS
    } else {
        println!("self-test FAILED");
        ExitCode::from(1)
    }
}

fn chain_suite() -> bool {
    let word = parse_word("e1 e3 s3 s1 s2 s3", 4).unwrap();
    (0..=10i64).all(|m| {
        let start = gram_family_blowup(m as usize);
        let stage = |text: &str| {
            apply_word(&start, &parse_word(text, 4).unwrap()).unwrap()
        };
        let expect = |rows: &[Vec<i64>]| GramMatrix::from_rows(rows).unwrap();
        stage("s3")
            == expect(&[
                vec![1, 3, -5 * m, 6],
                vec![0, 1, -2 * m, 3],
                vec![0, 0, 1, -m],
                vec![0, 0, 0, 1],
            ])
            && stage("s2 s3")
                == expect(&[
                    vec![1, m, 3, 6],
                    vec![0, 1, 2 * m, 5 * m],
                    vec![0, 0, 1, 3],
                    vec![0, 0, 0, 1],
                ])
            && stage("s1 s2 s3")
                == expect(&[
                    vec![1, -m, -m, -m],
                    vec![0, 1, 3, 6],
                    vec![0, 0, 1, 3],
                    vec![0, 0, 0, 1],
                ])
            // (1,3) entry is +2m: the following sign flip at 3 lands on the
            // printed next stage only from +2m
            && stage("s3 s1 s2 s3")
                == expect(&[
                    vec![1, -m, 2 * m, -m],
                    vec![0, 1, -3, 3],
                    vec![0, 0, 1, -3],
                    vec![0, 0, 0, 1],
                ])
            && stage("e3 s3 s1 s2 s3")
                == expect(&[
                    vec![1, -m, -2 * m, -m],
                    vec![0, 1, 3, 3],
                    vec![0, 0, 1, 3],
                    vec![0, 0, 0, 1],
                ])
            && apply_word(&start, &word).unwrap() == gram_family(m as usize)
    })
}
