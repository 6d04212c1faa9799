//! Seeded property suites for the seminorm identities on finite systems:
//! monotonicity in the degree, the dual identity, the tensor inequality for
//! `T x T`, the power inequality for `T^d`, and the product trick. All five
//! are theorems; any failure is an implementation bug.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::averages::{multiple_average_finite, Weights};
use crate::calculus::{dual_pairing_finite, seminorm_finite, seminorm_power_finite};
use crate::sequences::IntegerSequence;
use crate::scenarios::{seeded_function, unit_sample, ExpectedTable, ScenarioReport};
use crate::systems::{CyclicFunction, CyclicProduct, CyclicSystem};
use crate::util;
use crate::Result;

pub const ID: &str = "seminorm_laws";

#[derive(Clone, Copy, Debug)]
pub struct SeminormLawsParams {
    pub modulus: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SeminormLawsParams {
    fn default() -> Self {
        SeminormLawsParams {
            modulus: 32,
            trials: 200,
            seed: 1,
        }
    }
}

pub fn seminorm_laws(params: &SeminormLawsParams, table: &ExpectedTable) -> Result<ScenarioReport> {
    if params.modulus > 64 || params.modulus == 0 {
        return Err(crate::Error::Precondition(
            "modulus must be in 1..=64".into(),
        ));
    }
    if params.trials > 500 {
        return Err(crate::Error::Precondition("trials capped at 500".into()));
    }
    let mut report = ScenarioReport::new(ID);
    report.input("modulus", params.modulus);
    report.input("trials", params.trials);
    report.input("seed", params.seed);

    let n = params.modulus;
    let sys = CyclicSystem::new(n, 1)?;
    let prod = CyclicProduct::square(sys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    // Worst margins over all trials; a law holds when its margin <= 0 up to
    // the stated tolerance. The constant function 1 is always trial 0, where
    // every identity holds with both sides 1.
    let mut monotonicity = f64::NEG_INFINITY;
    let mut dual_identity = f64::NEG_INFINITY;
    let mut tensor_ineq = f64::NEG_INFINITY;
    let mut power_ineq = f64::NEG_INFINITY;
    let mut trick_eq = f64::NEG_INFINITY;
    let mut trick_ineq = f64::NEG_INFINITY;

    for trial in 0..params.trials {
        let f = if trial == 0 {
            CyclicFunction::one(&sys)
        } else {
            seeded_function(&sys, &mut rng)
        };

        // seminorm values [f]_s for s = 0..4, shared by several laws below
        let values: Vec<f64> = (0..=4u32)
            .map(|s| seminorm_finite(&sys, &f, s).map(|v| v.value))
            .collect::<Result<_>>()?;

        // monotonicity: [f]_s <= [f]_{s+1} for s = 0..3
        for w in values.windows(2) {
            monotonicity = monotonicity.max(w[0] - w[1]);
        }

        // dual identity: integral(f * Dual_s f) = [f]_s^(2^s), s <= 3
        for s in 1..=3u32 {
            let lhs = dual_pairing_finite(&sys, &f, s)?;
            let rhs = seminorm_power_finite(&sys, &f, s)?;
            dual_identity = dual_identity.max((lhs - rhs).norm());
        }

        // tensor inequality: [f (x) conj f]_{s, TxT} <= [f]_{s+1, T}^2, s <= 2
        let ft = f.tensor(&f.conj());
        for s in 0..=2u32 {
            let lhs = seminorm_finite(&prod, &ft, s)?.value;
            let rhs = values[s as usize + 1];
            tensor_ineq = tensor_ineq.max(lhs - rhs * rhs);
        }

        // power inequality: [f]_{s, T} <= [f]_{s, T^d}, d in {2, 3}, s <= 3
        for d in [2i64, 3] {
            let sys_d = CyclicSystem::new(n, d)?;
            for s in 0..=3u32 {
                let rhs = seminorm_finite(&sys_d, &f, s)?.value;
                power_ineq = power_ineq.max(values[s as usize] - rhs);
            }
        }

        // product trick (i): |integral(T^{k1} f . T^{k2} g)|^2 equals the
        // tensored integral; (ii) weighted-average norm squared is bounded
        // by the tensored unweighted one.
        let g = seeded_function(&sys, &mut rng);
        let k1 = (trial as i64 * 7 + 3) % 50 - 25;
        let k2 = (trial as i64 * 11 + 5) % 50 - 25;
        let lhs = f
            .iterate(&sys, k1)
            .mul(&g.iterate(&sys, k2))?
            .integral()
            .norm_sqr();
        let gt = g.tensor(&g.conj());
        let rhs = ft
            .iterate(&prod, k1)
            .mul(&gt.iterate(&prod, k2))?
            .integral();
        trick_eq = trick_eq.max((lhs - rhs.re).abs().max(rhs.im.abs()));

        let count = 24u64;
        let weights: Vec<Complex64> = (0..count)
            .map(|_| {
                util::e_unit(unit_sample(&mut rng)) * (0.5 + 0.5 * unit_sample(&mut rng).abs())
            })
            .collect();
        let id = IntegerSequence::identity();
        let sq = IntegerSequence::polynomial(&[0, 0, 1]);
        let (_, weighted) = multiple_average_finite(
            &sys,
            &[(&id, &f), (&sq, &g)],
            count,
            &Weights::Table(weights),
        )?;
        let (_, tensored) = multiple_average_finite(
            &prod,
            &[(&id, &ft), (&sq, &gt)],
            count,
            &Weights::Unit,
        )?;
        trick_ineq = trick_ineq.max(weighted * weighted - tensored);
    }

    if params.trials == 0 {
        report.note("empty", "no trials requested; vacuous pass");
        return Ok(report);
    }
    report.check(table, "monotonicity_margin", monotonicity, "max [f]_s - [f]_{s+1}")?;
    report.check(
        table,
        "dual_identity_margin",
        dual_identity,
        "max |integral(f Dual_s f) - [f]_s^(2^s)|",
    )?;
    report.check(
        table,
        "tensor_inequality_margin",
        tensor_ineq,
        "max [f x conj f]_s - [f]_{s+1}^2",
    )?;
    report.check(
        table,
        "power_inequality_margin",
        power_ineq,
        "max [f]_{s,T} - [f]_{s,T^d}",
    )?;
    report.check(
        table,
        "product_trick_identity_margin",
        trick_eq,
        "max |lhs|^2 vs tensored integral deviation",
    )?;
    report.check(
        table,
        "product_trick_inequality_margin",
        trick_ineq,
        "max weighted^2 - tensored",
    )?;
    report.note(
        "margins",
        format!(
            "monotonicity {monotonicity:.3e}, dual {dual_identity:.3e}, tensor {tensor_ineq:.3e}, power {power_ineq:.3e}, trick eq {trick_eq:.3e}, trick ineq {trick_ineq:.3e}"
        ),
    );
    Ok(report)
}
