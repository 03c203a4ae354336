//! Randomized identities for the scalar ring: supercommutativity,
//! associativity, inversion, derivation rules, and equality as a congruence.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcon_core::corpus::random_superfunction;
use symcon_core::{Parity, Superfunction, Var};

const P: usize = 2;
const Q: usize = 2;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn homogeneous(rng: &mut ChaCha8Rng, parity: Parity) -> Superfunction {
    random_superfunction(rng, P, Q, parity, 2, 2)
}

fn arbitrary(rng: &mut ChaCha8Rng) -> Superfunction {
    match rng.gen_range(0..4u8) {
        0 => homogeneous(rng, Parity::Even),
        1 => homogeneous(rng, Parity::Odd),
        2 => {
            let e = homogeneous(rng, Parity::Even);
            let o = homogeneous(rng, Parity::Odd);
            &e + &o
        }
        _ => Superfunction::zero(P, Q),
    }
}

fn parity_of(b: bool) -> Parity {
    if b {
        Parity::Odd
    } else {
        Parity::Even
    }
}

proptest! {
    #[test]
    fn supercommutativity(seed in any::<u64>(), pa: bool, pb: bool) {
        let mut rng = rng_for(seed);
        let a = homogeneous(&mut rng, parity_of(pa));
        let b = homogeneous(&mut rng, parity_of(pb));
        let sign = parity_of(pa).koszul(parity_of(pb));
        prop_assert_eq!(&a * &b, (&b * &a).neg_if(sign));
    }

    #[test]
    fn associativity_and_distributivity(seed in any::<u64>()) {
        let mut rng = rng_for(seed);
        let a = arbitrary(&mut rng);
        let b = arbitrary(&mut rng);
        let c = arbitrary(&mut rng);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>()) {
        let mut rng = rng_for(seed);
        let mut a = arbitrary(&mut rng);
        if a.body().is_zero() {
            a = &a + &Superfunction::from_int(P, Q, rng.gen_range(1..=3));
        }
        let inv = a.invert().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert!((&inv * &a).is_one());
    }

    #[test]
    fn odd_derivations_square_to_zero(seed in any::<u64>(), m in 0usize..Q) {
        let mut rng = rng_for(seed);
        let f = arbitrary(&mut rng);
        let twice = f.partial(Var::Odd(m)).unwrap().partial(Var::Odd(m)).unwrap();
        prop_assert!(twice.is_zero());
    }

    #[test]
    fn mixed_partials_commute_or_anticommute(seed in any::<u64>(), i in 0usize..P, m in 0usize..Q) {
        let mut rng = rng_for(seed);
        let f = arbitrary(&mut rng);
        // even/odd partials commute
        let a = f.partial(Var::Even(i)).unwrap().partial(Var::Odd(m)).unwrap();
        let b = f.partial(Var::Odd(m)).unwrap().partial(Var::Even(i)).unwrap();
        prop_assert_eq!(a, b);
        // distinct odd partials anticommute
        let n = (m + 1) % Q;
        let c = f.partial(Var::Odd(m)).unwrap().partial(Var::Odd(n)).unwrap();
        let d = f.partial(Var::Odd(n)).unwrap().partial(Var::Odd(m)).unwrap();
        prop_assert_eq!(c, -&d);
    }

    #[test]
    fn graded_leibniz(seed in any::<u64>(), pf: bool, odd_var in 0usize..Q, even_var in 0usize..P, use_odd: bool) {
        let mut rng = rng_for(seed);
        let f = homogeneous(&mut rng, parity_of(pf));
        let g = arbitrary(&mut rng);
        let var = if use_odd { Var::Odd(odd_var) } else { Var::Even(even_var) };
        let var_parity = if use_odd { Parity::Odd } else { Parity::Even };
        let lhs = (&f * &g).partial(var).unwrap();
        let sign = var_parity.koszul(parity_of(pf));
        let rhs = &(&f.partial(var).unwrap() * &g) + &(&f * &g.partial(var).unwrap()).neg_if(sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn equality_is_a_congruence(seed in any::<u64>()) {
        let mut rng = rng_for(seed);
        let a = arbitrary(&mut rng);
        let b = arbitrary(&mut rng);
        prop_assert_eq!(a == b, (&a - &b).is_zero());
        // the same value through a different unreduced representation
        let mut denom = arbitrary(&mut rng);
        if denom.body().is_zero() {
            denom = &denom + &Superfunction::from_int(P, Q, 2);
        }
        let blown_up = &(&a * &denom) * &denom.invert().unwrap();
        prop_assert_eq!(blown_up, a);
    }

    #[test]
    fn grade_involution_is_a_ring_map(seed in any::<u64>()) {
        let mut rng = rng_for(seed);
        let a = arbitrary(&mut rng);
        let b = arbitrary(&mut rng);
        let lhs = (&a * &b).grade_involution();
        let rhs = &a.grade_involution() * &b.grade_involution();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.grade_involution().grade_involution(), a);
    }
}

#[test]
fn values_are_shareable_between_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Superfunction>();
    assert_send_sync::<symcon_core::Chart>();
    assert_send_sync::<symcon_core::VectorField>();
    assert_send_sync::<symcon_core::TwoForm>();
    assert_send_sync::<symcon_core::Connection>();
    assert_send_sync::<symcon_core::NTensor>();
    assert_send_sync::<symcon_core::STensor>();
    assert_send_sync::<symcon_core::SCochain>();
    assert_send_sync::<symcon_core::VerificationReport>();
}

proptest! {
    #[test]
    fn soul_is_nilpotent(seed in any::<u64>()) {
        let mut rng = rng_for(seed);
        let f = arbitrary(&mut rng);
        let soul = f.soul();
        prop_assert!(soul.pow(Q as u32 + 1).is_zero());
        prop_assert_eq!(&f.soul() + &Superfunction::from_rf(P, Q, f.body()), f);
    }
}
