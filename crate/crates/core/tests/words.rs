mod common;

use common::{random_object, random_word};
use hopf_g_tqft::label::Label;
use hopf_g_tqft::tangle::parse_expr;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_words_parse_back(seed in any::<u64>(), rank in 0usize..=2, steps in 1usize..=5) {
        let pool = Label::all_with_denominator(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = random_object(&mut rng, &pool, rank);
        let w = random_word(&mut rng, &o, &pool, steps, 3);
        let back = parse_expr(&w.to_string()).unwrap();
        prop_assert_eq!(back.typecheck().unwrap(), w.typecheck().unwrap());
        prop_assert_eq!(back, w);
    }
}

#[test]
fn ill_typed_words_name_the_node() {
    let err = parse_expr("(compose (gen S 1/2 0) (gen eta 0))").and_then(|e| e.typecheck().map(|_| ())).unwrap_err();
    assert!(err.to_string().contains("root"), "{err}");
}
