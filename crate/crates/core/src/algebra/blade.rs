//! Grassmann basis monomials encoded as index bitmasks.

use std::fmt;

/// A canonically ordered index subset of `{1..n}`: bit `i-1` set means `e_i`
/// is a factor. The empty mask is the identity `Id`. Masks are capped at 16
/// indices (one machine word); the computations here need at most 10.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Blade(pub u16);

impl Blade {
    pub const ID: Blade = Blade(0);

    /// Single basis vector `e_i`, 1-based.
    pub fn vector(i: u8) -> Blade {
        assert!((1..=16).contains(&i), "index out of range");
        Blade(1 << (i - 1))
    }

    /// From ascending 1-based indices.
    pub fn from_indices(indices: &[u8]) -> Blade {
        let mut mask = 0u16;
        for &i in indices {
            assert!((1..=16).contains(&i), "index out of range");
            let bit = 1 << (i - 1);
            assert!(mask & bit == 0, "repeated index");
            mask |= bit;
        }
        Blade(mask)
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_scalar(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: u8) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// Ascending 1-based indices.
    pub fn indices(self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.grade() as usize);
        let mut m = self.0;
        let mut i = 1u8;
        while m != 0 {
            if m & 1 != 0 {
                out.push(i);
            }
            m >>= 1;
            i += 1;
        }
        out
    }

    pub fn lowest_index(self) -> Option<u8> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as u8 + 1)
        }
    }

    pub fn without(self, i: u8) -> Blade {
        Blade(self.0 & !(1 << (i - 1)))
    }

    /// Sign of merging two disjoint masks into ascending order: the parity
    /// of the transpositions needed to interleave the index lists. Zero when
    /// the masks intersect.
    pub fn merge_sign(self, other: Blade) -> i32 {
        if self.0 & other.0 != 0 {
            return 0;
        }
        let mut sign = 1;
        for i in other.indices() {
            let higher = (self.0 >> i).count_ones();
            if higher % 2 == 1 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Blade {
    /// Graded lexicographic: by grade, then by ascending index list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "Id");
        }
        write!(f, "e")?;
        for i in self.indices() {
            if i >= 10 {
                // keep two-digit indices unambiguous
                write!(f, "_{i}")?;
            } else {
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

/// Grade filters for basis enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GradeFilter {
    All,
    Grade(u32),
    Even,
    Odd,
}

/// The ordered Grassmann basis of dimension `n`: by grade, then
/// lexicographic by index list.
pub fn cbasis(n: u8, filter: GradeFilter) -> Vec<Blade> {
    assert!(n <= 16, "dimension capped at 16");
    let mut blades: Vec<Blade> = (0..(1u32 << n)).map(|m| Blade(m as u16)).collect();
    blades.sort();
    blades
        .into_iter()
        .filter(|b| match filter {
            GradeFilter::All => true,
            GradeFilter::Grade(k) => b.grade() == k,
            GradeFilter::Even => b.grade() % 2 == 0,
            GradeFilter::Odd => b.grade() % 2 == 1,
        })
        .collect()
}
