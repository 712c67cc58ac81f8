use scrollsmith::algebra::{Field, Fp};
use scrollsmith::groebner::{IdealBasis, MonomialOrder};
use scrollsmith::reference::{reference_projection, EXPECTED};
use scrollsmith::scroll::{
    image_forms, image_forms_count, minor_ideal, pair_matrix, scroll_param, singular_pairs, tangent_clearance,
    tangent_clearance_closure, ParamPoint,
};

const P: u32 = 31;

#[test]
fn eight_singular_pairs_over_f31() {
    let pm = reference_projection().unwrap().reduce(P).unwrap();
    let rep = singular_pairs(&pm).unwrap();
    assert_eq!(rep.pair_count, EXPECTED.pair_count);
    assert_eq!(rep.distinct_points, EXPECTED.distinct_points);
    assert!(rep.degenerate_pairs.is_empty());
    assert!(rep.tangent_clearance);
    assert!(rep.tangent_clearance_closure);
    for pair in &rep.pairs {
        assert_eq!(pair_matrix(&pm, &pair.params[0], &pair.params[1]).unwrap().rank(), 3);
    }
}

#[test]
fn reported_image_points_lie_on_both_image_lines() {
    let pm = reference_projection().unwrap().reduce(P).unwrap();
    let rep = singular_pairs(&pm).unwrap();
    for pair in &rep.pairs {
        let pt: Vec<Fp> = pair.image_point.iter().map(|&x| Fp::new(x as i64, P)).collect();
        for s in &pair.params {
            // rows: A(s)Λ, θ(s)Λ, point; rank 2 means the point is on the line
            let line = scrollsmith::scroll::ruling_matrix::<Fp>(P, pm.spec(), &[*s]).unwrap();
            let a = pm.project(line.row(0)).unwrap();
            let t = pm.project(line.row(2)).unwrap();
            let m = scrollsmith::algebra::ExactMatrix::from_rows(P, vec![a, t, pt.clone()]).unwrap();
            assert_eq!(m.rank(), 2, "pair {:?}", pair.params);
        }
    }
}

#[test]
fn six_containing_cubics() {
    let pm = reference_projection().unwrap().reduce(P).unwrap();
    assert_eq!(image_forms_count(&pm, 1), 0);
    assert_eq!(image_forms_count(&pm, 2), 0);
    let cubics = image_forms(&pm, 3);
    assert_eq!(cubics.len(), EXPECTED.cubics);
    // 56 - 6 = 50 = 58 - 8
    assert_eq!(56 - cubics.len() as i64, EXPECTED.h0_scroll);
    let spec = *pm.spec();
    for f in &cubics {
        for s in [0i64, 4, 9, 30] {
            for t in [1i64, 2, 29] {
                let x = scroll_param(P, &spec, &ParamPoint::Finite(s), &Fp::new(t, P));
                let z = pm.project(&x).unwrap();
                assert!(f.eval(&z).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn clearance_holds_over_f31() {
    let pm = reference_projection().unwrap().reduce(P).unwrap();
    assert!(tangent_clearance(&pm).unwrap());
    assert!(tangent_clearance_closure(&pm).unwrap());
}

#[test]
fn minor_ideal_is_a_groebner_basis_input() {
    let spec = *reference_projection().unwrap().spec();
    let minors = minor_ideal::<Fp>(P, &spec);
    assert_eq!(minors.len(), 36);
    let gb = IdealBasis::new(P, 11, &minors, MonomialOrder::GrevLex).unwrap();
    for m in &minors {
        assert!(gb.contains(m).unwrap());
    }
    // S_{1,8} ⊂ P^10 has Hilbert function (9/2)d^2 + (11/2)d + 1
    let hf = |d: usize| (9 * d * d + 11 * d) / 2 + 1;
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |a, i| a * (n - i) / (i + 1));
    for d in 1..4 {
        assert_eq!(gb.graded_piece_dim(d as u32).unwrap(), binom(10 + d, d) - hf(d));
    }
}
