//! Orders on words and the well-order built outside a finite family of finite well-orders.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{DiagError, IndexedFamily, WordIndexing};
use crate::system::System;
use crate::word::{Bit, Nat, Word};

type Leq = Arc<dyn Fn(&Word, &Word) -> bool + Send + Sync>;

/// A carrier system with a comparison `leq` on its members.
#[derive(Clone)]
pub struct OrderComparator {
    carrier: System,
    leq: Leq,
    description: String,
}

impl OrderComparator {
    pub fn new<F>(description: impl Into<String>, carrier: System, leq: F) -> OrderComparator
    where
        F: Fn(&Word, &Word) -> bool + Send + Sync + 'static,
    {
        OrderComparator {
            carrier,
            leq: Arc::new(leq),
            description: description.into(),
        }
    }

    /// The finite chain `chain[0] < chain[1] < ...`.
    pub fn chain(chain: Vec<Word>) -> Result<OrderComparator, DiagError> {
        let distinct: BTreeSet<&Word> = chain.iter().collect();
        if distinct.len() != chain.len() {
            return Err(DiagError::NotAnOrder("chain repeats an element".into()));
        }
        let description = chain.iter().map(Word::to_string).collect::<Vec<_>>().join("<");
        let carrier = System::finite(chain.iter().cloned());
        let rank = move |x: &Word| chain.iter().position(|c| c == x);
        Ok(OrderComparator::new(description, carrier, move |a, b| match (rank(a), rank(b)) {
            (Some(i), Some(j)) => i <= j,
            _ => false,
        }))
    }

    pub fn carrier(&self) -> &System {
        &self.carrier
    }

    pub fn leq(&self, a: &Word, b: &Word) -> bool {
        (self.leq)(a, b)
    }

    pub fn less(&self, a: &Word, b: &Word) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Carrier size, when finite.
    pub fn len(&self) -> Option<usize> {
        self.carrier.extent().map(BTreeSet::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Carrier elements in ascending order; `None` for infinite carriers.
    pub fn elements(&self) -> Option<Vec<Word>> {
        let mut items: Vec<Word> = self.carrier.extent()?.iter().cloned().collect();
        items.sort_by(|a, b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.leq(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        Some(items)
    }

    /// Reflexivity, antisymmetry, transitivity and totality on a finite carrier. A finite
    /// total order is a well-order, so this also certifies least elements.
    pub fn check_well_order(&self) -> Result<(), DiagError> {
        let items: Vec<Word> = self
            .carrier
            .extent()
            .ok_or_else(|| DiagError::Unsupported(format!("{} has an infinite carrier", self.description)))?
            .iter()
            .cloned()
            .collect();
        let bad = |what: String| Err(DiagError::NotAnOrder(format!("{}: {what}", self.description)));
        for a in &items {
            if !self.leq(a, a) {
                return bad(format!("{a} is not below itself"));
            }
            for b in &items {
                let (ab, ba) = (self.leq(a, b), self.leq(b, a));
                if a != b && ab && ba {
                    return bad(format!("{a} and {b} are below each other"));
                }
                if !ab && !ba {
                    return bad(format!("{a} and {b} are incomparable"));
                }
                for c in &items {
                    if ab && self.leq(b, c) && !self.leq(a, c) {
                        return bad(format!("{a} <= {b} <= {c} but not {a} <= {c}"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrderComparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderComparator({})", self.description)
    }
}

impl fmt::Display for OrderComparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

/// Exhaustive search for an order-preserving bijection between two finite orders.
pub fn order_isomorphic(a: &OrderComparator, b: &OrderComparator) -> Result<bool, DiagError> {
    let finite = |o: &OrderComparator| -> Result<Vec<Word>, DiagError> {
        Ok(o.carrier
            .extent()
            .ok_or_else(|| DiagError::Unsupported(format!("{} has an infinite carrier", o.description)))?
            .iter()
            .cloned()
            .collect())
    };
    let (xs, ys) = (finite(a)?, finite(b)?);
    if xs.len() != ys.len() {
        return Ok(false);
    }
    let mut image: Vec<usize> = Vec::with_capacity(xs.len());
    let mut used = vec![false; ys.len()];
    Ok(extend(a, b, &xs, &ys, &mut image, &mut used))
}

fn extend(
    a: &OrderComparator,
    b: &OrderComparator,
    xs: &[Word],
    ys: &[Word],
    image: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = image.len();
    if i == xs.len() {
        return true;
    }
    for j in 0..ys.len() {
        if used[j] {
            continue;
        }
        let consistent = image.iter().enumerate().all(|(p, &q)| {
            a.leq(&xs[p], &xs[i]) == b.leq(&ys[q], &ys[j]) && a.leq(&xs[i], &xs[p]) == b.leq(&ys[j], &ys[q])
        });
        if consistent {
            used[j] = true;
            image.push(j);
            if extend(a, b, xs, ys, image, used) {
                return true;
            }
            image.pop();
            used[j] = false;
        }
    }
    false
}

/// Concatenates one block per family member, in family order, followed by a top element `1`.
///
/// Member `i`'s element `b0` becomes `1^i 0^{index(b0)}`; inside a block the member's own order applies.
pub fn missing_well_order(
    family: &IndexedFamily<OrderComparator>,
    indexing: Arc<dyn WordIndexing>,
) -> Result<OrderComparator, DiagError> {
    let members = family
        .members()
        .ok_or_else(|| DiagError::Unsupported("the family must be finite".into()))?;
    let mut carrier = vec![Word::one()];
    for (pos, member) in members.iter().enumerate() {
        let elems = member
            .carrier()
            .extent()
            .ok_or_else(|| DiagError::Unsupported(format!("member {} has an infinite carrier", pos + 1)))?;
        for b0 in elems {
            let c = indexing
                .index(b0)
                .ok_or_else(|| DiagError::Unsupported(format!("{b0} has no index")))?;
            carrier.push(block_word(pos as u64 + 1, c)?);
        }
    }
    let carrier = System::finite(carrier);
    let members = Arc::new(members);
    let place = {
        let members = Arc::clone(&members);
        move |w: &Word| -> Option<(usize, Word)> {
            let ones = w.bits().iter().take_while(|&&b| b == Bit::One).count();
            if w.bits()[ones..].iter().any(|&b| b == Bit::One) {
                return None;
            }
            let member = members.get(ones.checked_sub(1)?)?;
            let b0 = indexing.word((w.len() - ones) as u64)?;
            member.carrier().member(&b0).then_some((ones - 1, b0))
        }
    };
    let leq = move |x: &Word, y: &Word| {
        let top = Word::one();
        if y == &top {
            return true;
        }
        if x == &top {
            return false;
        }
        match (place(x), place(y)) {
            (Some((i, a)), Some((j, b))) => i < j || (i == j && members[i].leq(&a, &b)),
            _ => false,
        }
    };
    Ok(OrderComparator::new(
        format!("blocks of {} then top", family.description()),
        carrier,
        leq,
    ))
}

fn block_word(i: u64, c: u64) -> Result<Word, DiagError> {
    let nat = |n: u64| Nat::new(n).map_err(|e| DiagError::Unsupported(e.to_string()));
    Ok(Word::run(Bit::One, nat(i)?).concat(&Word::run(Bit::Zero, nat(c)?)))
}
