//! Plain word combinatorics shared by the language builders, the insertion
//! calculus and the test oracles.

/// Does `word` contain a factor of the form `u^n` with `u` nonempty?
pub fn has_power_factor(word: &[u8], n: usize) -> bool {
    assert!(n >= 1);
    let len = word.len();
    if n == 1 {
        return !word.is_empty();
    }
    // factor u^n starting at i with |u| = l
    for l in 1..=len / n {
        for i in 0..=len - n * l {
            let base = &word[i..i + l];
            if (1..n).all(|r| &word[i + r * l..i + (r + 1) * l] == base) {
                return true;
            }
        }
    }
    false
}

pub fn is_power_free(word: &[u8], n: usize) -> bool {
    !has_power_factor(word, n)
}

/// Do the new factors ending at the last position of `word` include an n-power?
///
/// Incremental form of [`has_power_factor`] for words extended one letter at a
/// time: if `word[..len-1]` is n-power-free, the whole word is n-power-free
/// exactly when this returns `false`.
pub fn has_power_suffix(word: &[u8], n: usize) -> bool {
    let len = word.len();
    for l in 1..=len / n {
        let start = len - n * l;
        let base = &word[start..start + l];
        if (1..n).all(|r| &word[start + r * l..start + (r + 1) * l] == base) {
            return true;
        }
    }
    false
}

/// Is `word` a factor of some power of `w`?
pub fn is_factor_of_power(word: &[u8], w: &[u8]) -> bool {
    assert!(!w.is_empty());
    if word.is_empty() {
        return true;
    }
    // enough copies of w to cover every starting offset
    let copies = word.len() / w.len() + 2;
    let mut big = Vec::with_capacity(copies * w.len());
    for _ in 0..copies {
        big.extend_from_slice(w);
    }
    big.windows(word.len()).any(|win| win == word)
}

/// Is `word` an exact power `w^k`? Returns the exponent when so.
pub fn power_exponent(word: &[u8], w: &[u8]) -> Option<usize> {
    if !word.len().is_multiple_of(w.len()) {
        return None;
    }
    let k = word.len() / w.len();
    if word.chunks(w.len()).all(|c| c == w) {
        Some(k)
    } else {
        None
    }
}

/// Letter counts over a fixed alphabet.
pub fn letter_counts(word: &[u8], alphabet: &[u8]) -> Vec<usize> {
    alphabet
        .iter()
        .map(|&a| word.iter().filter(|&&c| c == a).count())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_and_cubes() {
        assert!(has_power_factor(b"abab", 2));
        assert!(!has_power_factor(b"xabay", 2));
        assert!(has_power_factor(b"aa", 2));
        assert!(!has_power_factor(b"", 2));
        assert!(has_power_factor(b"zabcabcabcy", 3));
        assert!(!has_power_factor(b"zabcabcy", 3));
    }

    #[test]
    fn known_power_free_witnesses() {
        assert!(is_power_free(b"txyzxzyt", 2));
        assert!(is_power_free(b"abcacb", 2));
        // (b^2 a)^2 (ab)^2 a^2 wrapped in t's, cube-free
        assert!(is_power_free(b"tbbabbaababaatt", 3));
    }

    #[test]
    fn suffix_scan_matches_full_scan() {
        let alphabet = b"ab";
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..8 {
            let mut next = Vec::new();
            for w in &words {
                for &a in alphabet {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            for w in &next {
                let incremental = is_power_free(&w[..w.len() - 1], 2) && !has_power_suffix(w, 2);
                assert_eq!(incremental, is_power_free(w, 2), "word {:?}", w);
            }
            words = next.into_iter().filter(|w| is_power_free(w, 2)).collect();
        }
    }

    #[test]
    fn factors_of_powers() {
        assert!(is_factor_of_power(b"ba", b"ab"));
        assert!(!is_factor_of_power(b"aa", b"ab"));
        assert!(is_factor_of_power(b"", b"ab"));
        assert!(is_factor_of_power(b"cacbabcacbab", b"abcacb"));
        assert_eq!(power_exponent(b"abab", b"ab"), Some(2));
        assert_eq!(power_exponent(b"aba", b"ab"), None);
        assert_eq!(power_exponent(b"", b"ab"), Some(0));
    }
}
