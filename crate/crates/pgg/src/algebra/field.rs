//! Table-backed arithmetic for the small finite fields GF(2), GF(3), GF(4),
//! GF(5) and GF(9).
//!
//! Elements are represented as `u8` indices into precomputed tables.  For the
//! prime orders the index is the residue itself; GF(4) is GF(2)[x]/(x^2+x+1)
//! with index `a0 + 2*a1` for `a0 + a1*x`, and GF(9) is GF(3)[x]/(x^2+1) with
//! index `a0 + 3*a1`.  Tables are built once per order and validated against
//! the field axioms exhaustively.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const SUPPORTED_ORDERS: [u16; 5] = [2, 3, 4, 5, 9];

/// One finite field of order `q <= 9`, all operations table lookups.
pub struct Field {
    q: u16,
    characteristic: u16,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// x -> x^sqrt(q) when q is a square, empty otherwise.
    conj: Vec<u8>,
}

impl Field {
    /// Shared handle for the field of order `q`.
    pub fn get(q: u16) -> Result<&'static Field> {
        static CELLS: [OnceLock<Field>; 5] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        let idx = SUPPORTED_ORDERS
            .iter()
            .position(|&o| o == q)
            .ok_or(Error::UnsupportedField(q))?;
        Ok(CELLS[idx].get_or_init(|| Field::build(q)))
    }

    fn build(q: u16) -> Field {
        let n = q as usize;
        let (characteristic, ext) = match q {
            2 | 3 | 5 => (q, false),
            4 => (2, true),
            9 => (3, true),
            _ => unreachable!(),
        };
        let p = characteristic as usize;
        let raw_add: Box<dyn Fn(usize, usize) -> usize> = if ext {
            Box::new(move |a, b| {
                let (a0, a1) = (a % p, a / p);
                let (b0, b1) = (b % p, b / p);
                (a0 + b0) % p + p * ((a1 + b1) % p)
            })
        } else {
            Box::new(move |a, b| (a + b) % p)
        };
        let raw_mul: Box<dyn Fn(usize, usize) -> usize> = if ext {
            // Multiply (a0 + a1 x)(b0 + b1 x) modulo the defining polynomial:
            // x^2 = x + 1 over GF(2), x^2 = -1 over GF(3).
            Box::new(move |a, b| {
                let (a0, a1) = (a % p, a / p);
                let (b0, b1) = (b % p, b / p);
                let c0 = a0 * b0;
                let c1 = a0 * b1 + a1 * b0;
                let c2 = a1 * b1;
                if p == 2 {
                    // x^2 = x + 1
                    ((c0 + c2) % 2) + 2 * ((c1 + c2) % 2)
                } else {
                    // x^2 = -1 = 2
                    ((c0 + 2 * c2) % 3) + 3 * (c1 % 3)
                }
            })
        } else {
            Box::new(move |a, b| (a * b) % p)
        };

        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = raw_add(a, b) as u8;
                mul[a * n + b] = raw_mul(a, b) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8;
        }
        let mut inv = vec![0u8; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u8;
        }
        let conj = if ext {
            // x -> x^p is the order-2 automorphism.
            (0..n)
                .map(|a| {
                    let mut r = a;
                    for _ in 1..p {
                        r = raw_mul(r, a);
                    }
                    r as u8
                })
                .collect()
        } else {
            Vec::new()
        };

        let f = Field {
            q,
            characteristic,
            add,
            mul,
            neg,
            inv,
            conj,
        };
        f.validate().expect("field table construction is broken");
        f
    }

    /// Exhaustive check of the field axioms (and of the conjugation being an
    /// involutive automorphism fixing exactly the prime subfield image).
    fn validate(&self) -> std::result::Result<(), String> {
        let n = self.q as usize;
        for a in 0..n as u8 {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("negation fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return Err(format!("inverse fails at {a}"));
            }
            for b in 0..n as u8 {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err("commutativity fails".into());
                }
                for c in 0..n as u8 {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err("additive associativity fails".into());
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err("multiplicative associativity fails".into());
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err("distributivity fails".into());
                    }
                }
            }
        }
        if self.has_conj() {
            let mut fixed = 0;
            for a in 0..n as u8 {
                let ca = self.conj(a).unwrap();
                if self.conj(ca).unwrap() != a {
                    return Err("conjugation is not an involution".into());
                }
                for b in 0..n as u8 {
                    let cb = self.conj(b).unwrap();
                    if self.conj(self.add(a, b)).unwrap() != self.add(ca, cb)
                        || self.conj(self.mul(a, b)).unwrap() != self.mul(ca, cb)
                    {
                        return Err("conjugation is not an automorphism".into());
                    }
                }
                if ca == a {
                    fixed += 1;
                }
            }
            let sqrt_q = (2..).find(|s| s * s == self.q).unwrap();
            if fixed != sqrt_q {
                return Err(format!("conjugation fixes {fixed} elements, expected {sqrt_q}"));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> u16 {
        self.q
    }

    pub fn characteristic(&self) -> u16 {
        self.characteristic
    }

    pub fn has_conj(&self) -> bool {
        !self.conj.is_empty()
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.q));
        }
        Ok(self.inv[a as usize])
    }

    pub fn conj(&self, a: u8) -> Result<u8> {
        if !self.has_conj() {
            return Err(Error::NoConjugation(self.q));
        }
        Ok(self.conj[a as usize])
    }

    /// All elements, 0 first.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// First non-square element, if any (used for anisotropic form parts).
    pub fn nonsquare(&self) -> Option<u8> {
        let squares: Vec<u8> = self.elements().map(|a| self.mul(a, a)).collect();
        self.elements().find(|a| !squares.contains(a))
    }
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}
