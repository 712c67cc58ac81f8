use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::{Monomial, MAX_VARS};

pub const KEY_LEN: usize = MAX_VARS + 2;

/// Byte string whose lexicographic order is the monomial order.
pub type OrderKey = [u8; KEY_LEN];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Any polynomial whose leading term avoids the first block lies entirely
    /// in the remaining variables.
    Block(usize),
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::GrevLex
    }
}

fn grevlex_into(key: &mut OrderKey, pos: &mut usize, m: &Monomial, lo: usize, hi: usize) {
    let deg: u32 = (lo..hi).map(|i| m.exp(i)).sum();
    key[*pos] = u8::try_from(deg).expect("degree above 255 in ordered arithmetic");
    *pos += 1;
    for i in (lo..hi).rev() {
        key[*pos] = 255 - m.exp(i) as u8;
        *pos += 1;
    }
}

impl MonomialOrder {
    pub fn key(&self, m: &Monomial, nvars: usize) -> OrderKey {
        let mut key = [0u8; KEY_LEN];
        let mut pos = 0;
        match *self {
            MonomialOrder::GrevLex => grevlex_into(&mut key, &mut pos, m, 0, nvars),
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    key[i] = m.exp(i) as u8;
                }
            }
            MonomialOrder::Block(k) => {
                let k = k.min(nvars);
                grevlex_into(&mut key, &mut pos, m, 0, k);
                grevlex_into(&mut key, &mut pos, m, k, nvars);
            }
        }
        key
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        self.key(a, nvars).cmp(&self.key(b, nvars))
    }
}
