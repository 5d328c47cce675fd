//! Permutations of the four vertex labels of a tetrahedron.

use std::fmt;
use std::str::FromStr;

const ALL_PERMS: [Perm; 24] = {
    let mut out = [Perm([0, 0, 0, 0]); 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                let d = 6 - a - b - c;
                if a != b && a != c && b != c && d >= 0 && d < 4 && d != a && d != b && d != c {
                    out[n] = Perm([a as u8, b as u8, c as u8, d as u8]);
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

/// A permutation of `{0, 1, 2, 3}`, stored as the images of 0, 1, 2, 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm([u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn new(images: [u8; 4]) -> Option<Perm> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm(images))
    }

    #[inline]
    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(self, other: Perm) -> Perm {
        Perm([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    pub fn inverse(self) -> Perm {
        let mut inv = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All 24 permutations in lexicographic order of their image arrays.
    pub fn all() -> impl Iterator<Item = Perm> {
        ALL_PERMS.iter().copied()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePermError;

impl FromStr for Perm {
    type Err = ParsePermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(ParsePermError);
        }
        let mut images = [0u8; 4];
        for (slot, &b) in images.iter_mut().zip(bytes) {
            if !(b'0'..=b'3').contains(&b) {
                return Err(ParsePermError);
            }
            *slot = b - b'0';
        }
        Perm::new(images).ok_or(ParsePermError)
    }
}
