//! Measures the truncated counterparts of the symbolic battery candidates at
//! width 128, to confirm each shipped battery item sits well inside the 5e-2
//! agreement tolerance.

use ghk_core::averages::{multiple_average_numeric, Weights};
use ghk_core::calculus::{
    dual_symbolic_trig, dual_truncated_numeric, seminorm_symbolic, seminorm_truncated_numeric,
};
use ghk_core::scalars::{rat, ExactComplex, Instantiation};
use ghk_core::sequences::IntegerSequence;
use ghk_core::systems::{AffineSystem, NumericTrigPoly, TrigPolynomial};

fn main() {
    let inst = Instantiation::standard();
    let sys = AffineSystem::skew_product("alpha");
    let nsys = sys.instantiate(&inst).unwrap();
    let e1 = TrigPolynomial::character(2, &[1, 0]);
    let e2 = TrigPolynomial::character(2, &[0, 1]);
    let mix = e2
        .add(&TrigPolynomial::character(2, &[0, 2]).scale(&ExactComplex::from_rat(rat(1, 2))))
        .unwrap();
    let w = 128usize;

    for (name, f, s) in [
        ("[e(x1)]_1", &e1, 1u32),
        ("[e(x1)]_2", &e1, 2),
        ("[e(x2)]_2", &e2, 2),
        ("[e(x2)]_3", &e2, 3),
        ("[mix]_2", &mix, 2),
    ] {
        let sym = seminorm_symbolic(&sys, f, s, &inst).unwrap();
        let sym_power = sym.power.eval(&inst).unwrap();
        let nf = NumericTrigPoly::from_exact(f, &inst).unwrap();
        let tr = seminorm_truncated_numeric(&nsys, &nf, s, w).unwrap();
        println!(
            "{name}: |sym_power - trunc_power| = {:.5}  (sym {:.5}, trunc {:.5})",
            (sym_power - tr.power).norm(),
            sym_power.norm(),
            tr.power.norm()
        );
    }

    for (name, f, s) in [
        ("Dual_2(e(x1))", &e1, 2u32),
        ("Dual_3(e(x2))", &e2, 3),
        ("Dual_2(mix)", &mix, 2),
    ] {
        let (sym, _) = dual_symbolic_trig(&sys, f, s).unwrap();
        let nf = NumericTrigPoly::from_exact(f, &inst).unwrap();
        let tr = dual_truncated_numeric(&nsys, &nf, s, w).unwrap();
        let sym_num = NumericTrigPoly::from_exact(&sym, &inst).unwrap();
        println!(
            "{name}: L2 distance = {:.5} (symbolic has {} terms)",
            tr.l2_distance(&sym_num).unwrap(),
            sym.num_terms()
        );
    }

    let id = IntegerSequence::identity();
    let sq = IntegerSequence::polynomial(&[0, 0, 1]);
    let two = IntegerSequence::polynomial(&[0, 2]);
    let e1n = NumericTrigPoly::from_exact(&e1, &inst).unwrap();
    let e1c = NumericTrigPoly::from_exact(&e1.conj(), &inst).unwrap();
    let e2n = NumericTrigPoly::from_exact(&e2, &inst).unwrap();
    for (name, items) in [
        ("avg T^n e(x1)", vec![(&id, &e1n)]),
        ("avg T^n e(x1) T^2n e(x1)", vec![(&id, &e1n), (&two, &e1n)]),
        ("avg T^n e(x1) T^n conj", vec![(&id, &e1n), (&id, &e1c)]),
        ("avg T^(n^2) e(x1)", vec![(&sq, &e1n)]),
        ("avg T^n e(x2)", vec![(&id, &e2n)]),
    ] {
        let (_, norm) = multiple_average_numeric(&nsys, &items, 128, &Weights::Unit).unwrap();
        println!("{name}: finite norm at 128 = {norm:.5}");
    }
}
