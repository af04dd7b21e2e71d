//! Small shared utilities.

/// Symmetric boolean relation on `n` items, packed into u64 words.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words_per_row + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: bool) {
        self.set(i, j, v);
        self.set(j, i, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_and_get() {
        let mut m = BitMatrix::new(100);
        m.set_sym(3, 77, true);
        assert!(m.get(3, 77));
        assert!(m.get(77, 3));
        assert!(!m.get(3, 78));
        m.set_sym(3, 77, false);
        assert!(!m.get(3, 77));
    }
}
