use morphic_core::gen::palindrome_family;
use morphic_core::{all_words, run, verify, Letter, Morphism, Oracle, Word};

const EXAMPLE: &str = "caabcaadeaabeaad";

fn morphism(w: &Word, images: &[(&str, &str)]) -> Morphism {
    let mut imgs: Vec<Vec<Letter>> = vec![Vec::new(); w.alphabet_size()];
    for (a, img) in images {
        imgs[w.letter_of(a).unwrap().index()] = img
            .chars()
            .map(|c| w.letter_of(&c.to_string()).unwrap())
            .collect();
    }
    Morphism::from_images(imgs)
}

#[test]
fn alternative_morphisms_share_the_expanding_set() {
    let w = Word::from_chars(EXAMPLE);
    let computed = run(&w);
    let alternatives = [
        [("b", "aab"), ("c", "c"), ("d", "aad"), ("e", "e")],
        [("b", "ab"), ("c", "ca"), ("d", "ad"), ("e", "ea")],
        [("b", "b"), ("c", "caa"), ("d", "d"), ("e", "eaa")],
    ];
    for images in alternatives {
        let f = morphism(&w, &images);
        assert!(verify(&w, &f), "{}", f.render(&w));
        assert_eq!(f.expanding(), computed.morphism.expanding());
    }
    assert_eq!(computed.morphism, morphism(&w, &alternatives[0]));
}

#[test]
fn palindrome_family_is_primitive_for_oracle() {
    let oracle = Oracle::default();
    for n in 1..=5 {
        let w = palindrome_family(n);
        assert!(oracle.is_primitive(&w).unwrap(), "w_{n}");
        assert!(run(&w).primitive);
    }
}

#[test]
fn oracle_witnesses_are_fixed_points() {
    let oracle = Oracle::default();
    for w in all_words(8, 3) {
        let v = oracle.min_expanding(&w).unwrap();
        let f = v.morphism(&w);
        assert!(verify(&w, &f), "{w}");
        assert_eq!(f.expanding(), v.expanding);
    }
}
