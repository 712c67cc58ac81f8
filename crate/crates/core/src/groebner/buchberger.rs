//! Buchberger's algorithm with the Gebauer–Möller criteria.
//!
//! Polynomials are held as term vectors sorted by descending order key.
//! Reduction accumulates into a hash map and walks a max-heap of pending
//! monomials, so each reduction step touches only the reducer's terms.

use std::collections::{BinaryHeap, HashMap};

use super::order::{MonomialOrder, OrderKey};
use crate::algebra::field::Field;
use crate::algebra::poly::{Monomial, MultiPoly};

pub(crate) type Term<F> = (OrderKey, Monomial, F);

#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly<F: Field> {
    pub terms: Vec<Term<F>>,
}

impl<F: Field> OrderedPoly<F> {
    pub fn from_poly(p: &MultiPoly<F>, order: MonomialOrder) -> Self {
        let n = p.nvars();
        let mut terms: Vec<Term<F>> = p.terms().map(|(m, c)| (order.key(m, n), *m, c.clone())).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        OrderedPoly { terms }
    }

    pub fn to_poly(&self, ctx: F::Ctx, nvars: usize) -> MultiPoly<F> {
        let mut p = MultiPoly::zero(ctx, nvars);
        for (_, m, c) in &self.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    pub fn lead(&self) -> &Monomial {
        &self.terms[0].1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        let inv = self.terms[0].2.inv().expect("leading coefficient is nonzero");
        for t in &mut self.terms {
            t.2 = t.2.mul(&inv);
        }
    }
}

/// Fully reduces `start` modulo the polynomials `basis[i]` for `i` in
/// `active`. Every basis element must be monic.
pub(crate) fn reduce<F: Field>(
    start: impl IntoIterator<Item = (Monomial, F)>,
    basis: &[OrderedPoly<F>],
    active: &[usize],
    order: MonomialOrder,
    nvars: usize,
) -> OrderedPoly<F> {
    let mut acc: HashMap<Monomial, F> = HashMap::new();
    let mut heap: BinaryHeap<(OrderKey, Monomial)> = BinaryHeap::new();
    let push = |acc: &mut HashMap<Monomial, F>, heap: &mut BinaryHeap<(OrderKey, Monomial)>, m: Monomial, c: F| {
        if c.is_zero() {
            return;
        }
        match acc.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
            }
            None => {
                acc.insert(m, c);
                heap.push((order.key(&m, nvars), m));
            }
        }
    };
    for (m, c) in start {
        push(&mut acc, &mut heap, m, c);
    }
    let mut out = Vec::new();
    while let Some((key, m)) = heap.pop() {
        let Some(c) = acc.remove(&m) else { continue };
        if c.is_zero() {
            continue;
        }
        let reducer = active
            .iter()
            .map(|&i| &basis[i])
            .filter(|g| g.lead().divides(&m))
            .min_by_key(|g| g.terms.len());
        match reducer {
            Some(g) => {
                let q = g.lead().quotient_of(&m);
                for (_, gm, gc) in &g.terms[1..] {
                    push(&mut acc, &mut heap, gm.mul(&q), gc.mul(&c).neg());
                }
            }
            None => out.push((key, m, c)),
        }
    }
    OrderedPoly { terms: out }
}

fn s_poly_terms<F: Field>(f: &OrderedPoly<F>, g: &OrderedPoly<F>) -> Vec<(Monomial, F)> {
    let l = f.lead().lcm(g.lead());
    let qf = f.lead().quotient_of(&l);
    let qg = g.lead().quotient_of(&l);
    let mut out: Vec<(Monomial, F)> = f.terms[1..].iter().map(|(_, m, c)| (m.mul(&qf), c.clone())).collect();
    out.extend(g.terms[1..].iter().map(|(_, m, c)| (m.mul(&qg), c.neg())));
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<F: Field> {
    polys: Vec<OrderedPoly<F>>,
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<F: Field> State<F> {
    /// Inserts the new element `h` and prunes pairs and basis elements.
    fn update(&mut self, h: usize) {
        let lh = *self.polys[h].lead();
        let cand: Vec<Pair> = self
            .basis
            .iter()
            .map(|&g| Pair {
                i: g,
                j: h,
                lcm: self.polys[g].lead().lcm(&lh),
            })
            .collect();

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        for (a, p) in cand.iter().enumerate() {
            let coprime = self.polys[p.i].lead().is_coprime(&lh);
            let dominated = cand[a + 1..].iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !self.polys[p.i].lead().is_coprime(&lh));

        // Old pairs whose lcm is strictly divisible through h.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lhi = polys[p.i].lead().lcm(&lh);
            let lhj = polys[p.j].lead().lcm(&lh);
            !(lh.divides(&p.lcm) && lhi != p.lcm && lhj != p.lcm)
        });
        self.pairs.extend(kept);

        self.basis.retain(|&g| !lh.divides(polys[g].lead()));
        self.basis.push(h);
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// descending leading monomial.
pub(crate) fn reduced_basis<F: Field>(
    ctx: F::Ctx,
    nvars: usize,
    gens: &[MultiPoly<F>],
    order: MonomialOrder,
) -> Vec<MultiPoly<F>> {
    let mut st = State {
        polys: Vec::new(),
        basis: Vec::new(),
        pairs: Vec::new(),
    };

    let mut inputs: Vec<OrderedPoly<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OrderedPoly::from_poly(g, order))
        .collect();
    inputs.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));
    for f in inputs {
        let coeffs: Vec<F> = f.terms.iter().map(|t| t.2.clone()).collect();
        let scale = F::content_normalizer(&coeffs);
        let start = f.terms.into_iter().map(|(_, m, c)| {
            let c = match &scale {
                Some(s) => c.mul(s),
                None => c,
            };
            (m, c)
        });
        let mut h = reduce(start, &st.polys, &st.basis, order, nvars);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        st.polys.push(h);
        st.update(st.polys.len() - 1);
    }

    while !st.pairs.is_empty() {
        let pick = st
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm.degree(), order.key(&p.lcm, nvars)))
            .map(|(k, _)| k)
            .expect("nonempty");
        let pair = st.pairs.swap_remove(pick);
        let s = s_poly_terms(&st.polys[pair.i], &st.polys[pair.j]);
        let mut h = reduce(s, &st.polys, &st.basis, order, nvars);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        st.polys.push(h);
        st.update(st.polys.len() - 1);
    }

    // Interreduce the tails of the minimal basis.
    let basis = st.basis.clone();
    let mut out: Vec<OrderedPoly<F>> = basis
        .iter()
        .map(|&g| {
            let others: Vec<usize> = basis.iter().copied().filter(|&o| o != g).collect();
            let p = &st.polys[g];
            let lead = p.terms[0].clone();
            let tail = reduce(
                p.terms[1..].iter().map(|(_, m, c)| (*m, c.clone())),
                &st.polys,
                &others,
                order,
                nvars,
            );
            let mut terms = vec![lead];
            terms.extend(tail.terms);
            OrderedPoly { terms }
        })
        .collect();
    out.sort_by(|a, b| b.terms[0].0.cmp(&a.terms[0].0));
    out.iter().map(|p| p.to_poly(ctx, nvars)).collect()
}
