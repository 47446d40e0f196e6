//! Permutations of {1..d} in one-line notation, with Coxeter length and
//! reduced words. Strands of Hecke diagrams are numbered from the right,
//! matching the tuple index convention used throughout.

use std::cmp::Ordering;
use std::fmt;

/// Permutation on d letters; `map[i]` is the (0-based) image of i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<u8>,
}

impl Permutation {
    pub fn identity(d: usize) -> Permutation {
        Permutation {
            map: (0..d as u8).collect(),
        }
    }

    /// The simple transposition s_r swapping positions r and r+1 (1-based r).
    pub fn simple(d: usize, r: usize) -> Permutation {
        assert!(r >= 1 && r < d, "simple reflection index out of range");
        let mut map: Vec<u8> = (0..d as u8).collect();
        map.swap(r - 1, r);
        Permutation { map }
    }

    pub fn from_images(map: Vec<u8>) -> Permutation {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            assert!((v as usize) < map.len() && !seen[v as usize], "not a bijection");
            seen[v as usize] = true;
        }
        Permutation { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Image of the 1-based position r.
    pub fn apply(&self, r: usize) -> usize {
        self.map[r - 1] as usize + 1
    }

    /// (self o rhs)(x) = self(rhs(x)).
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree());
        Permutation {
            map: rhs.map.iter().map(|&v| self.map[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0u8; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v as usize] = i as u8;
        }
        Permutation { map }
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let mut n = 0;
        for i in 0..self.map.len() {
            for j in i + 1..self.map.len() {
                if self.map[i] > self.map[j] {
                    n += 1;
                }
            }
        }
        n
    }

    /// A reduced word (s_{j_1}, ..., s_{j_m}) with self = s_{j_1} o ... o s_{j_m},
    /// indices 1-based.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word_rev = vec![];
        // peel letters from the right: a descent w(r) > w(r+1) means
        // w = (w s_r) s_r with length drop
        loop {
            let Some(r) = (1..w.degree()).find(|&r| w.map[r - 1] > w.map[r]) else {
                break;
            };
            w.map.swap(r - 1, r);
            word_rev.push(r);
        }
        word_rev.reverse();
        word_rev
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.map.cmp(&other.map)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.map.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "[{}]", imgs.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_lengths() {
        let d = 4;
        let w = Permutation::simple(d, 1)
            .compose(&Permutation::simple(d, 2))
            .compose(&Permutation::simple(d, 1));
        assert_eq!(w.length(), 3);
        let word = w.reduced_word();
        assert_eq!(word.len(), 3);
        let mut rebuilt = Permutation::identity(d);
        for r in word {
            rebuilt = rebuilt.compose(&Permutation::simple(d, r));
        }
        assert_eq!(rebuilt, w);
        assert!(Permutation::identity(d).reduced_word().is_empty());
    }

    #[test]
    fn simple_swaps_positions() {
        let s1 = Permutation::simple(3, 1);
        assert_eq!(s1.apply(1), 2);
        assert_eq!(s1.apply(2), 1);
        assert_eq!(s1.apply(3), 3);
        assert_eq!(s1.compose(&s1), Permutation::identity(3));
    }
}
