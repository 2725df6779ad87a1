use crate::word::{Letter, Word};

/// A morphism on `alph(w)`, given by one image per letter. Letters with an
/// empty image are erased; the others are expanding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    pub fn identity(alphabet_size: usize) -> Self {
        Morphism {
            images: (0..alphabet_size as u32).map(|a| vec![Letter(a)]).collect(),
        }
    }

    /// `images[a]` is the image of letter `a`.
    pub fn from_images(images: Vec<Vec<Letter>>) -> Self {
        Morphism { images }
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a.index()]
    }

    pub fn images(&self) -> impl Iterator<Item = (Letter, &[Letter])> {
        self.images
            .iter()
            .enumerate()
            .map(|(a, img)| (Letter(a as u32), img.as_slice()))
    }

    pub fn expanding(&self) -> Vec<Letter> {
        self.images()
            .filter(|(_, img)| !img.is_empty())
            .map(|(a, _)| a)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images().all(|(a, img)| img == [a])
    }

    pub fn apply(&self, seq: &[Letter]) -> Vec<Letter> {
        seq.iter()
            .flat_map(|&a| self.image(a).iter().copied())
            .collect()
    }

    /// `|f(w[1..=k])|` for every cut `k = 0..=n`.
    pub fn prefix_image_lengths(&self, w: &Word) -> Vec<usize> {
        let mut acc = 0;
        std::iter::once(0)
            .chain(w.letters().iter().map(|&a| {
                acc += self.image(a).len();
                acc
            }))
            .collect()
    }

    /// Boundaries of the factorization `w = f(w[1]) f(w[2]) ...`, ascending.
    /// Meaningful only when `f(w) = w`.
    pub fn factor_cuts(&self, w: &Word) -> Vec<usize> {
        let mut cuts = self.prefix_image_lengths(w);
        cuts.dedup();
        cuts
    }

    /// Renders `a↦image, ...` with `ε` for erased letters.
    pub fn render(&self, w: &Word) -> String {
        self.images()
            .map(|(a, img)| {
                let img = if img.is_empty() {
                    "ε".to_owned()
                } else {
                    w.render(img)
                };
                format!("{}↦{}", w.symbol(a), img)
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// True iff `f(w) = w` and `f(f(a)) = f(a)` for every letter of `w`.
pub fn verify(w: &Word, f: &Morphism) -> bool {
    if f.alphabet_size() != w.alphabet_size() {
        return false;
    }
    if f.apply(w.letters()) != w.letters() {
        return false;
    }
    f.images()
        .all(|(_, img)| img.iter().all(|&b| b.index() < f.alphabet_size()) && f.apply(img) == img)
}

/// Checks that every cut of `left` is a left cut of `f` (`|f(w[1..=k])| <= k`)
/// and every cut of `right` is a right cut (`|f(w[1..=k])| >= k`).
pub fn left_right_cut_check(w: &Word, f: &Morphism, left: &[usize], right: &[usize]) -> bool {
    let lens = f.prefix_image_lengths(w);
    left.iter().all(|&k| k < lens.len() && lens[k] <= k)
        && right.iter().all(|&k| k < lens.len() && lens[k] >= k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn morphism(w: &Word, images: &[(&str, &str)]) -> Morphism {
        let mut imgs = vec![Vec::new(); w.alphabet_size()];
        for (a, img) in images {
            let a = w.letter_of(a).unwrap();
            imgs[a.index()] = img
                .chars()
                .map(|c| w.letter_of(&c.to_string()).unwrap())
                .collect();
        }
        Morphism::from_images(imgs)
    }

    #[test]
    fn intro_witness() {
        let w = Word::from_chars("abaaba");
        let f = morphism(&w, &[("b", "aba")]);
        assert!(verify(&w, &f));
        assert_eq!(f.render(&w), "a↦ε, b↦aba");
        assert_eq!(f.prefix_image_lengths(&w), [0, 0, 3, 3, 3, 6, 6]);
        assert_eq!(f.factor_cuts(&w), [0, 3, 6]);

        let bad = morphism(&w, &[("b", "ab")]);
        assert_eq!(w.render(&bad.apply(w.letters())), "abab");
        assert!(!verify(&w, &bad));
    }

    #[test]
    fn identity_always_verifies() {
        for s in ["", "a", "abba", "caabcaadeaabeaad"] {
            let w = Word::from_chars(s);
            let id = Morphism::identity(w.alphabet_size());
            assert!(id.is_identity());
            assert!(verify(&w, &id));
            assert_eq!(id.factor_cuts(&w), (0..=w.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn non_idempotent_fixed_point_is_rejected() {
        // a↦ab, b↦c, c↦ε fixes abc, but f(f(a)) = abc ≠ ab.
        let w = Word::from_chars("abc");
        let f = morphism(&w, &[("a", "ab"), ("b", "c")]);
        assert_eq!(f.apply(w.letters()), w.letters());
        assert!(!verify(&w, &f));
    }

    #[test]
    fn cut_sides() {
        let w = Word::from_chars("abaaba");
        let f = morphism(&w, &[("b", "aba")]);
        assert!(left_right_cut_check(
            &w,
            &f,
            &[0, 1, 3, 4, 6],
            &[0, 2, 3, 5, 6]
        ));
        assert!(left_right_cut_check(&w, &f, &[0, 6], &[0, 6]));
        assert!(!left_right_cut_check(&w, &f, &[2], &[]));
        assert!(!left_right_cut_check(&w, &f, &[], &[1]));
    }
}
