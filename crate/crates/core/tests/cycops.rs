use catlift::cycops::{
    check_adjunction_count, forget_cyclic, random_two_element, right_adjoint_r, sigma_i, terminal_cyclic, two_element_cyclic,
    validate_cyclic, validate_operad, Sym, TruncatedCyclicOperad, TwoElementKind,
};
use catlift::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BOUND: usize = 3;

fn cyclic_sources() -> Vec<TruncatedCyclicOperad> {
    let mut out = vec![terminal_cyclic(BOUND, false), terminal_cyclic(BOUND, true)];
    out.extend(TwoElementKind::all().into_iter().map(|k| two_element_cyclic(k, BOUND)).filter(|q| validate_cyclic(q).valid));
    out
}

/// `σ_i` is a permutation of `{1..n}` for every `σ ∈ Σ_{n+1}`, and the
/// identity goes to the identity with index `i`.
#[test]
fn twisted_permutations_are_well_defined() {
    let sym = Sym::new(5);
    for n in 0..=4 {
        for s in sym.perms(n + 1) {
            for i in 0..=n {
                let (si, j) = sigma_i(s, i).unwrap();
                let mut sorted = si.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..n).collect::<Vec<_>>(), "σ = {s:?}, i = {i}");
                assert!(j <= n);
            }
        }
        let id: Vec<usize> = (0..=n).collect();
        for i in 0..=n {
            assert_eq!(sigma_i(&id, i).unwrap(), ((0..n).collect(), i));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn right_adjoint_is_cyclic(seed in any::<u64>()) {
        let (kind, p) = random_two_element(&mut ChaCha8Rng::seed_from_u64(seed), BOUND).unwrap();
        prop_assert!(validate_operad(&p).valid, "{:?}", kind);
        let rp = right_adjoint_r(&p).unwrap();
        let report = validate_cyclic(&rp);
        prop_assert!(report.valid, "{:?}: {:?}", kind, report.violations);
        for n in 0..=BOUND {
            prop_assert_eq!(rp.operad().size(n), p.size(n).pow(n as u32 + 1));
        }
    }

    /// On `Σ_n ⊂ Σ_{n+1}` the extended action is the operad action.
    #[test]
    fn extended_action_restricts(seed in any::<u64>()) {
        let (_, p) = random_two_element(&mut ChaCha8Rng::seed_from_u64(seed), BOUND).unwrap();
        let rp = right_adjoint_r(&p).unwrap();
        prop_assert_eq!(&forget_cyclic(&rp), rp.operad());
        let o = rp.operad();
        for n in 0..=BOUND {
            for s in o.sym().perms(n) {
                for v in 0..o.size(n) {
                    prop_assert_eq!(rp.ext_act_perm(n, &Sym::extend(s), v), o.act_perm(n, s, v));
                }
            }
        }
    }

    #[test]
    fn adjunction_counts_agree(seed in any::<u64>()) {
        let (kind, p) = random_two_element(&mut ChaCha8Rng::seed_from_u64(seed), BOUND).unwrap();
        let mut checked = 0;
        for q in cyclic_sources() {
            match check_adjunction_count(&q, &p, 200_000) {
                Ok(c) => {
                    prop_assert!(c.counts_agree, "{:?}: {:?}", kind, c);
                    prop_assert!(c.pi0_bijective && c.transpose_inverts, "{:?}: {:?}", kind, c);
                    checked += 1;
                }
                Err(Error::Budget { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        prop_assert!(checked >= 2);
    }
}
