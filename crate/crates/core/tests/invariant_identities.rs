//! Identities tying the Jones engine to the Alexander engine.

use cosmetic_core::diagram::{alexander_fox, jones, BraidWord, Diagram, DEFAULT_MAX_CROSSINGS};
use cosmetic_core::laurent::LaurentPoly;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_knot_braid(rng: &mut ChaCha8Rng, max_len: usize) -> BraidWord {
    loop {
        let strands = rng.gen_range(2..=4usize);
        let len = rng.gen_range(1..=max_len);
        let letters = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) { g } else { -g }
            })
            .collect();
        let b = BraidWord::new(strands, letters).unwrap();
        if b.components() == 1 {
            return b;
        }
    }
}

fn identities(b: &BraidWord) -> Result<(), String> {
    let pd = b.to_pd().map_err(|e| e.to_string())?;
    let v = jones(&pd, DEFAULT_MAX_CROSSINGS).map_err(|e| e.to_string())?;
    let d = alexander_fox(&pd).map_err(|e| e.to_string())?;
    let (v0, v1, v2) = (v.eval_at_one(), v.derivative_at_one(1), v.derivative_at_one(2));
    let d2 = d.derivative_at_one(2);
    if v0 != BigInt::from(1) || v1 != BigInt::from(0) || v2 != BigInt::from(-3) * &d2 {
        return Err(format!("{b:?}: V(1)={v0} V'(1)={v1} V''(1)={v2} Δ''(1)={d2}"));
    }
    Ok(())
}

#[test]
fn two_hundred_seeded_braid_closures() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let b = random_knot_braid(&mut rng, 12);
        identities(&b).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identities_hold_for_arbitrary_seeds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_knot_braid(&mut rng, 10);
        prop_assert!(identities(&b).is_ok(), "{:?}", identities(&b));
    }

    #[test]
    fn delta2_is_mirror_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_knot_braid(&mut rng, 10);
        let d = alexander_fox(&b.to_pd().unwrap()).unwrap();
        let dm = alexander_fox(&b.mirror().to_pd().unwrap()).unwrap();
        prop_assert_eq!(d, dm);
    }

    #[test]
    fn jones_of_mirror_inverts_t(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_knot_braid(&mut rng, 10);
        let v = jones(&b.to_pd().unwrap(), DEFAULT_MAX_CROSSINGS).unwrap();
        let vm = jones(&b.mirror().to_pd().unwrap(), DEFAULT_MAX_CROSSINGS).unwrap();
        prop_assert_eq!(v.mirror(), vm);
    }

    #[test]
    fn conjugation_and_stabilization_preserve_invariants(seed in any::<u64>(), k in 0usize..12, sign in prop::bool::ANY) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_knot_braid(&mut rng, 10);
        let mut letters = b.letters().to_vec();
        let k = k % letters.len();
        letters.rotate_left(k);
        letters.push(if sign { b.strands() as i32 } else { -(b.strands() as i32) });
        let moved = BraidWord::new(b.strands() + 1, letters).unwrap();
        let (pd, pd2) = (b.to_pd().unwrap(), moved.to_pd().unwrap());
        prop_assert_eq!(jones(&pd, 26).unwrap(), jones(&pd2, 26).unwrap());
        prop_assert_eq!(alexander_fox(&pd).unwrap(), alexander_fox(&pd2).unwrap());
    }
}

/// Three or more diagrams of the same knot.
#[test]
fn invariants_do_not_depend_on_the_diagram() {
    let families: [&[&str]; 3] = [
        &[
            "BR[2; 1,1,1]",
            "BR[3; 1,1,1,2]",
            "BR[3; 1,2,1,2]",
            "PD[X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)]",
        ],
        &[
            "BR[3; 1,-2,1,-2]",
            "BR[3; -2,1,-2,1]",
            "BR[4; 1,-2,1,-2,3]",
            "PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]",
        ],
        &["BR[2; 1,1,1,1,1]", "BR[3; 1,1,1,1,1,-2]", "BR[2; 1,1,1,1,1,1,-1]"],
    ];
    for fam in families {
        let polys: Vec<(LaurentPoly, LaurentPoly)> = fam
            .iter()
            .map(|s| {
                let pd = Diagram::parse(s).unwrap().to_pd().unwrap();
                (jones(&pd, 26).unwrap(), alexander_fox(&pd).unwrap())
            })
            .collect();
        for (s, p) in fam.iter().zip(&polys) {
            assert_eq!(p, &polys[0], "{s} disagrees with {}", fam[0]);
        }
    }
}
