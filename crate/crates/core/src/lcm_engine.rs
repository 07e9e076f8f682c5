//! Prefix lcm values and the reduced set of lcm-raising members.
//!
//! For a member `a`, the jump factor `L(a)` is the ratio of the running lcm
//! just after `a` to the running lcm just before it. Members with `L(a) > 1`
//! form the reduced set `B = {b_1 < b_2 < ...}`; the running lcm only changes
//! at those members, so the table of `(b_k, L_k, Lambda_k)` with
//! `Lambda_k = L_1 L_2 ... L_k = lcm(b_1, ..., b_k)` determines the prefix lcm
//! at every `n`. `Lambda_0 = 1` and `b_0 = 0` by convention.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::set_model::{SetCursor, SetSpec};

/// `lcm(acc, a)` together with the jump factor `lcm(acc, a) / acc`.
///
/// Works on `acc mod a` so only one big-by-small remainder and one
/// big-by-small product are needed.
pub fn lcm_step(acc: &BigUint, a: u64) -> (BigUint, u64) {
    let rem = (acc % a).to_u64().expect("remainder below a u64 modulus");
    let jump = a / a.gcd(&rem);
    (acc * jump, jump)
}

/// Running lcm over the members of a set, one member at a time.
#[derive(Clone, Debug)]
pub struct PrefixLcms {
    cursor: SetCursor,
    lcm: BigUint,
}

impl PrefixLcms {
    pub fn new(spec: &SetSpec) -> Self {
        PrefixLcms {
            cursor: spec.cursor(),
            lcm: BigUint::one(),
        }
    }
}

impl Iterator for PrefixLcms {
    /// `(a, lcm{a' in A : a' <= a})`
    type Item = (u64, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        let a = self.cursor.next()?;
        let (next, _) = lcm_step(&self.lcm, a);
        self.lcm = next;
        Some((a, self.lcm.clone()))
    }
}

/// `lcm{a in A : a <= n}`, folded directly over the members of `A`.
/// The empty lcm is 1.
pub fn prefix_lcm(spec: &SetSpec, n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for a in spec.cursor().take_while(|&a| a <= n) {
        acc = lcm_step(&acc, a).0;
    }
    acc
}

/// `L(alpha)`, computed as the exact quotient of two prefix lcms.
pub fn jump_factor(spec: &SetSpec, alpha: u64) -> Result<u64> {
    if !spec.contains(alpha) {
        return Err(Error::NotAMember {
            set: spec.label().to_string(),
            value: alpha,
        });
    }
    let below = prefix_lcm(spec, alpha - 1);
    let through = prefix_lcm(spec, alpha);
    let (quotient, rem) = through.div_rem(&below);
    assert!(
        rem.is_zero(),
        "prefix lcm at {alpha} not a multiple of the one below"
    );
    Ok(quotient.to_u64().expect("jump factor divides a u64 member"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BElement {
    /// 1-based position in the reduced set.
    pub index: usize,
    pub value: u64,
    /// Jump factor `L_k >= 2`.
    pub jump: u64,
    /// `Lambda_k = L_1 ... L_k`.
    pub lcm: BigUint,
}

/// The reduced set of a [`SetSpec`], complete for every member up to
/// [`BProfile::exhausted_to`]. Grows append-only; `Lambda` is carried forward
/// and never recomputed.
#[derive(Clone, Debug)]
pub struct BProfile {
    spec: SetSpec,
    elements: Vec<BElement>,
    exhausted_to: u64,
    lcm: BigUint,
    unit: BigUint,
    cursor: SetCursor,
    pending: Option<u64>,
    cursor_done: bool,
    last_member: u64,
}

impl BProfile {
    /// All reduced-set elements `b <= up_to`.
    pub fn build(spec: &SetSpec, up_to: u64) -> Result<Self> {
        if up_to == 0 {
            return Err(Error::InvalidArgument("profile bound must be >= 1".into()));
        }
        let mut profile = Self::empty(spec);
        profile.extend(up_to)?;
        Ok(profile)
    }

    /// A profile covering nothing yet (`exhausted_to = 0`).
    pub fn empty(spec: &SetSpec) -> Self {
        BProfile {
            spec: spec.clone(),
            elements: Vec::new(),
            exhausted_to: 0,
            lcm: BigUint::one(),
            unit: BigUint::one(),
            cursor: spec.cursor(),
            pending: None,
            cursor_done: false,
            last_member: 0,
        }
    }

    pub fn spec(&self) -> &SetSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[BElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn exhausted_to(&self) -> u64 {
        self.exhausted_to
    }

    /// Element `k` (1-based).
    pub fn element(&self, k: usize) -> Option<&BElement> {
        k.checked_sub(1).and_then(|i| self.elements.get(i))
    }

    /// `Lambda_k`, with `Lambda_0 = 1`.
    pub fn lcm_at(&self, k: usize) -> &BigUint {
        if k == 0 {
            &self.unit
        } else {
            &self.elements[k - 1].lcm
        }
    }

    /// `b_k`, with `b_0 = 0`.
    pub fn value_at(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.elements[k - 1].value
        }
    }

    /// Position `k` with `b_k = alpha`, if `alpha` is in the covered part of the reduced set.
    pub fn position(&self, alpha: u64) -> Option<usize> {
        self.elements
            .binary_search_by_key(&alpha, |e| e.value)
            .ok()
            .map(|i| i + 1)
    }

    /// `#{b in B : b <= n}`.
    pub fn count_through(&self, n: u64) -> usize {
        self.elements.partition_point(|e| e.value <= n)
    }

    /// `lcm{b in B : b <= n}`, equal to the prefix lcm over `A`.
    pub fn lcm_through(&self, n: u64) -> &BigUint {
        self.lcm_at(self.count_through(n))
    }

    /// Extend coverage to every member `<= new_up_to`.
    pub fn extend(&mut self, new_up_to: u64) -> Result<()> {
        if new_up_to < self.exhausted_to {
            return Err(Error::InvalidArgument(format!(
                "cannot shrink profile from {} to {new_up_to}",
                self.exhausted_to
            )));
        }
        if let Some(max) = self.spec.max_member() {
            if new_up_to > max {
                return Err(self.spec.exhausted(max));
            }
        }
        loop {
            let next = match self.pending.take() {
                Some(a) => Some(a),
                None if self.cursor_done => None,
                None => self.cursor.next(),
            };
            let Some(a) = next else {
                self.cursor_done = true;
                if new_up_to > self.last_member {
                    return Err(self.spec.exhausted(self.last_member));
                }
                break;
            };
            if a > new_up_to {
                self.pending = Some(a);
                break;
            }
            self.last_member = a;
            self.push_member(a);
        }
        self.exhausted_to = new_up_to;
        Ok(())
    }

    /// Same as [`BProfile::extend`], leaving `self` untouched.
    pub fn extended(&self, new_up_to: u64) -> Result<Self> {
        let mut next = self.clone();
        next.extend(new_up_to)?;
        Ok(next)
    }

    fn push_member(&mut self, a: u64) {
        let (next, jump) = lcm_step(&self.lcm, a);
        if jump > 1 {
            self.lcm = next;
            self.elements.push(BElement {
                index: self.elements.len() + 1,
                value: a,
                jump,
                lcm: self.lcm.clone(),
            });
        }
    }

    /// Double the covered range (capped at the maximum of a finite set).
    pub fn grow(&mut self) -> Result<()> {
        let target = self.exhausted_to.saturating_mul(2).max(64);
        let target = match self.spec.max_member() {
            Some(max) if self.exhausted_to >= max => return Err(self.spec.exhausted(max)),
            Some(max) => target.min(max),
            None if self.exhausted_to == u64::MAX => {
                return Err(self.spec.exhausted(self.exhausted_to))
            }
            None => target,
        };
        self.extend(target)
    }

    /// Grow until at least `k` elements are present.
    pub fn ensure_len(&mut self, k: usize) -> Result<()> {
        while self.elements.len() < k {
            self.grow()?;
        }
        Ok(())
    }

    /// Grow until the running lcm exceeds `n`, returning the first `k` with `Lambda_k > n`.
    pub fn ensure_lcm_exceeds(&mut self, n: u64) -> Result<usize> {
        let target = BigUint::from(n);
        loop {
            if let Some(k) = self.first_lcm_exceeding(&target) {
                return Ok(k);
            }
            self.grow()?;
        }
    }

    /// First `k >= 1` with `Lambda_k > n` among the covered elements.
    pub fn first_lcm_exceeding(&self, n: &BigUint) -> Option<usize> {
        let i = self.elements.partition_point(|e| &e.lcm <= n);
        (i < self.elements.len()).then_some(i + 1)
    }
}
