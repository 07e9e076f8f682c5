//! Increasing sets of positive integers.
//!
//! A [`SetSpec`] describes the set, a [`SetCursor`] streams its members in
//! ascending order. Built-in families are infinite; explicit lists and set
//! files are finite, and anything that needs a member past the largest one
//! reports [`Error::SetExhausted`].
//!
//! Set files are plain text, one base-10 positive integer per line, strictly
//! increasing. Blank lines and lines starting with `#` are ignored.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::primes::{self, PrimeSieve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetKind {
    Naturals,
    Primes,
    Squarefree,
    PrimePowers,
    /// `{base, base^2, base^3, ...}`
    Geometric {
        base: u64,
    },
    /// `{first, first + step, first + 2 step, ...}`
    Arithmetic {
        first: u64,
        step: u64,
    },
    /// Finite list, from code or from a set file.
    Explicit(Arc<[u64]>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSpec {
    kind: SetKind,
    label: String,
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl SetSpec {
    pub fn naturals() -> Self {
        Self::with_label(SetKind::Naturals, "naturals")
    }

    pub fn primes() -> Self {
        Self::with_label(SetKind::Primes, "primes")
    }

    pub fn squarefree() -> Self {
        Self::with_label(SetKind::Squarefree, "squarefree")
    }

    pub fn prime_powers() -> Self {
        Self::with_label(SetKind::PrimePowers, "prime-powers")
    }

    pub fn geometric(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidSpec(format!(
                "geometric:{base} (base must be >= 2)"
            )));
        }
        Ok(Self::with_label(
            SetKind::Geometric { base },
            format!("geometric:{base}"),
        ))
    }

    pub fn arithmetic(first: u64, step: u64) -> Result<Self> {
        if first < 1 || step < 1 {
            return Err(Error::InvalidSpec(format!(
                "arithmetic:{first},{step} (first and step must be >= 1)"
            )));
        }
        Ok(Self::with_label(
            SetKind::Arithmetic { first, step },
            format!("arithmetic:{first},{step}"),
        ))
    }

    /// A finite set from a strictly increasing list of positive integers.
    pub fn explicit(members: Vec<u64>) -> Result<Self> {
        validate_members(&members)?;
        let label = list_label(&members);
        Ok(Self::with_label(SetKind::Explicit(members.into()), label))
    }

    /// Load a set file. Errors name the offending line.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let members = parse_set_file(&text).map_err(|(line, message)| Error::SetFile {
            path: path.to_path_buf(),
            line,
            message,
        })?;
        Ok(Self::with_label(
            SetKind::Explicit(members.into()),
            format!("file:{}", path.display()),
        ))
    }

    /// `count` distinct members drawn uniformly from `2..=max`, reproducible from `seed`.
    pub fn random(count: usize, max: u64, seed: u64) -> Result<Self> {
        if max < 2 || count == 0 || count as u64 > max - 1 {
            return Err(Error::InvalidArgument(format!(
                "cannot draw {count} distinct members from 2..={max}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut members: Vec<u64> = index::sample(&mut rng, (max - 1) as usize, count)
            .into_iter()
            .map(|i| i as u64 + 2)
            .collect();
        members.sort_unstable();
        Ok(Self::with_label(
            SetKind::Explicit(members.into()),
            format!("random:{count},{max},{seed}"),
        ))
    }

    fn with_label(kind: SetKind, label: impl Into<String>) -> Self {
        SetSpec {
            kind,
            label: label.into(),
        }
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, SetKind::Explicit(_))
    }

    /// Largest member of a finite set.
    pub fn max_member(&self) -> Option<u64> {
        match &self.kind {
            SetKind::Explicit(m) => m.last().copied(),
            _ => None,
        }
    }

    pub fn cursor(&self) -> SetCursor {
        SetCursor::new(&self.kind)
    }

    pub fn enumerate_up_to(&self, bound: u64) -> Vec<u64> {
        self.cursor().take_while(|&a| a <= bound).collect()
    }

    pub fn contains(&self, m: u64) -> bool {
        if m == 0 {
            return false;
        }
        match &self.kind {
            SetKind::Naturals => true,
            SetKind::Primes => primes::is_prime(m),
            SetKind::Squarefree => primes::is_squarefree(m),
            SetKind::PrimePowers => primes::is_prime_power(m),
            SetKind::Geometric { base } => {
                let mut p = *base;
                while p < m {
                    match p.checked_mul(*base) {
                        Some(q) => p = q,
                        None => return false,
                    }
                }
                p == m
            }
            SetKind::Arithmetic { first, step } => m >= *first && (m - first).is_multiple_of(*step),
            SetKind::Explicit(members) => members.binary_search(&m).is_ok(),
        }
    }

    /// `#{a in A : a <= n}`.
    pub fn count_up_to(&self, n: u64) -> u64 {
        match &self.kind {
            SetKind::Naturals => n,
            SetKind::Arithmetic { first, step } => {
                if n < *first {
                    0
                } else {
                    (n - first) / step + 1
                }
            }
            SetKind::Explicit(members) => members.partition_point(|&a| a <= n) as u64,
            _ => self.cursor().take_while(|&a| a <= n).count() as u64,
        }
    }

    pub(crate) fn exhausted(&self, last: u64) -> Error {
        Error::SetExhausted {
            set: self.label.clone(),
            last,
        }
    }
}

fn validate_members(members: &[u64]) -> Result<()> {
    if members.is_empty() {
        return Err(Error::InvalidSpec("empty member list".into()));
    }
    if members[0] == 0 {
        return Err(Error::InvalidSpec("members must be positive".into()));
    }
    if let Some(w) = members.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSpec(format!(
            "members must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// `list:2,3,5`; long lists keep their first and last members and a count.
fn list_label(members: &[u64]) -> String {
    const SHOWN: usize = 12;
    let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    if members.len() <= SHOWN {
        format!("list:{}", join(members))
    } else {
        format!(
            "list:{},...,{} ({} members)",
            join(&members[..SHOWN - 2]),
            join(&members[members.len() - 2..]),
            members.len()
        )
    }
}

fn parse_set_file(text: &str) -> std::result::Result<Vec<u64>, (usize, String)> {
    let mut members: Vec<u64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: u64 = line
            .parse()
            .map_err(|_| (i + 1, format!("`{line}` is not a positive integer")))?;
        if value == 0 {
            return Err((i + 1, "members must be positive".into()));
        }
        if let Some(&prev) = members.last() {
            if value <= prev {
                return Err((
                    i + 1,
                    format!("{value} does not exceed previous member {prev}"),
                ));
            }
        }
        members.push(value);
    }
    if members.is_empty() {
        return Err((0, "file lists no members".into()));
    }
    Ok(members)
}

impl FromStr for SetSpec {
    type Err = Error;

    /// Accepts `naturals`, `primes`, `squarefree`, `prime-powers`,
    /// `geometric:BASE`, `arithmetic:FIRST,STEP`, `list:A,B,...`,
    /// `random:COUNT,MAX,SEED` and `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidSpec(s.to_string());
        let ints = |body: &str| -> Result<Vec<u64>> {
            body.split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
                .collect()
        };
        match s.split_once(':') {
            None => match s {
                "naturals" => Ok(Self::naturals()),
                "primes" => Ok(Self::primes()),
                "squarefree" => Ok(Self::squarefree()),
                "prime-powers" | "prime_powers" => Ok(Self::prime_powers()),
                _ => Err(bad()),
            },
            Some(("file", path)) => Self::from_file(path),
            Some((head, body)) => {
                let args = ints(body)?;
                match (head, args.as_slice()) {
                    ("geometric", &[base]) => Self::geometric(base),
                    ("arithmetic", &[first, step]) => Self::arithmetic(first, step),
                    ("list", _) => Self::explicit(args),
                    ("random", &[count, max, seed]) => Self::random(count as usize, max, seed),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// Split a comma-separated list of set descriptions, keeping
/// `arithmetic:3,4` and similar multi-argument forms intact.
pub fn split_set_list(list: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match out.last_mut() {
            Some(prev) if token.parse::<u64>().is_ok() && prev.contains(':') => {
                prev.push(',');
                prev.push_str(token);
            }
            _ => out.push(token.to_string()),
        }
    }
    out
}

/// Streams the members of a set in ascending order.
#[derive(Clone, Debug)]
pub struct SetCursor {
    state: CursorState,
}

#[derive(Clone, Debug)]
enum CursorState {
    Stepping { next: Option<u64>, step: u64 },
    Geometric { next: Option<u64>, base: u64 },
    Primes { sieve: PrimeSieve, index: usize },
    Blocked(BlockedCursor),
    Explicit { members: Arc<[u64]>, index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BlockFamily {
    Squarefree,
    PrimePowers,
}

/// Sieves `[lo, hi)` one doubling block at a time.
#[derive(Clone, Debug)]
struct BlockedCursor {
    family: BlockFamily,
    sieve: PrimeSieve,
    buffer: VecDeque<u64>,
    lo: u64,
}

impl BlockedCursor {
    fn new(family: BlockFamily) -> Self {
        let lo = match family {
            BlockFamily::Squarefree => 1,
            BlockFamily::PrimePowers => 2,
        };
        BlockedCursor {
            family,
            sieve: PrimeSieve::new(),
            buffer: VecDeque::new(),
            lo,
        }
    }

    fn fill(&mut self) -> bool {
        if self.lo == u64::MAX {
            return false;
        }
        let lo = self.lo;
        let hi = lo.saturating_mul(2).max(64);
        match self.family {
            BlockFamily::Squarefree => {
                self.sieve.extend_to(isqrt(hi) + 2);
                let mut keep = vec![true; (hi - lo) as usize];
                for &p in self.sieve.primes() {
                    let sq = p * p;
                    if sq >= hi {
                        break;
                    }
                    let mut m = lo.div_ceil(sq) * sq;
                    while m < hi {
                        keep[(m - lo) as usize] = false;
                        m += sq;
                    }
                }
                self.buffer.extend(
                    keep.iter()
                        .enumerate()
                        .filter(|(_, &k)| k)
                        .map(|(i, _)| lo + i as u64),
                );
            }
            BlockFamily::PrimePowers => {
                self.sieve.extend_to(hi);
                let mut found: Vec<u64> = Vec::new();
                for &p in self.sieve.primes() {
                    if p >= hi {
                        break;
                    }
                    let mut q = p;
                    loop {
                        if q >= lo {
                            found.push(q);
                        }
                        match q.checked_mul(p) {
                            Some(next) if next < hi => q = next,
                            _ => break,
                        }
                    }
                }
                found.sort_unstable();
                self.buffer.extend(found);
            }
        }
        self.lo = hi;
        true
    }

    fn next(&mut self) -> Option<u64> {
        while self.buffer.is_empty() {
            if !self.fill() {
                return None;
            }
        }
        self.buffer.pop_front()
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

impl SetCursor {
    fn new(kind: &SetKind) -> Self {
        let state = match kind {
            SetKind::Naturals => CursorState::Stepping {
                next: Some(1),
                step: 1,
            },
            SetKind::Arithmetic { first, step } => CursorState::Stepping {
                next: Some(*first),
                step: *step,
            },
            SetKind::Geometric { base } => CursorState::Geometric {
                next: Some(*base),
                base: *base,
            },
            SetKind::Primes => CursorState::Primes {
                sieve: PrimeSieve::new(),
                index: 0,
            },
            SetKind::Squarefree => {
                CursorState::Blocked(BlockedCursor::new(BlockFamily::Squarefree))
            }
            SetKind::PrimePowers => {
                CursorState::Blocked(BlockedCursor::new(BlockFamily::PrimePowers))
            }
            SetKind::Explicit(members) => CursorState::Explicit {
                members: Arc::clone(members),
                index: 0,
            },
        };
        SetCursor { state }
    }
}

impl Iterator for SetCursor {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        match &mut self.state {
            CursorState::Stepping { next, step } => {
                let cur = (*next)?;
                *next = cur.checked_add(*step);
                Some(cur)
            }
            CursorState::Geometric { next, base } => {
                let cur = (*next)?;
                *next = cur.checked_mul(*base);
                Some(cur)
            }
            CursorState::Primes { sieve, index } => {
                while *index >= sieve.primes().len() {
                    if sieve.limit() == u64::MAX {
                        return None;
                    }
                    sieve.grow();
                }
                *index += 1;
                Some(sieve.primes()[*index - 1])
            }
            CursorState::Blocked(b) => b.next(),
            CursorState::Explicit { members, index } => {
                let cur = members.get(*index).copied()?;
                *index += 1;
                Some(cur)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_squarefree(n: u64) -> bool {
        (2..=n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d * d))
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(SetSpec::naturals().enumerate_up_to(5), vec![1, 2, 3, 4, 5]);
        assert_eq!(SetSpec::primes().enumerate_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(
            SetSpec::squarefree().enumerate_up_to(12),
            vec![1, 2, 3, 5, 6, 7, 10, 11]
        );
        assert_eq!(
            SetSpec::geometric(3).unwrap().enumerate_up_to(100),
            vec![3, 9, 27, 81]
        );
        assert_eq!(
            SetSpec::prime_powers().enumerate_up_to(20),
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]
        );
    }

    #[test]
    fn contains_examples() {
        assert!(!SetSpec::primes().contains(9));
        assert!(!SetSpec::squarefree().contains(8));
        assert!(SetSpec::geometric(2).unwrap().contains(16));
        assert!(!SetSpec::geometric(2).unwrap().contains(1));
        assert!(SetSpec::arithmetic(3, 4).unwrap().contains(11));
        assert!(!SetSpec::arithmetic(3, 4).unwrap().contains(9));
    }

    #[test]
    fn count_examples() {
        assert_eq!(SetSpec::naturals().count_up_to(100), 100);
        assert_eq!(SetSpec::primes().count_up_to(100), 25);
        let brute = (1..=100).filter(|&n| brute_squarefree(n)).count() as u64;
        assert_eq!(brute, 61);
        assert_eq!(SetSpec::squarefree().count_up_to(100), brute);
    }

    #[test]
    fn squarefree_cursor_matches_brute_force_across_blocks() {
        let got = SetSpec::squarefree().enumerate_up_to(5000);
        let want: Vec<u64> = (1..=5000).filter(|&n| brute_squarefree(n)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn prime_power_cursor_matches_predicate() {
        let got = SetSpec::prime_powers().enumerate_up_to(5000);
        let want: Vec<u64> = (1..=5000).filter(|&n| primes::is_prime_power(n)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn geometric_stops_at_overflow() {
        let g = SetSpec::geometric(2).unwrap();
        assert_eq!(g.cursor().count(), 63);
    }

    #[test]
    fn parse_descriptions() {
        assert_eq!("naturals".parse::<SetSpec>().unwrap(), SetSpec::naturals());
        assert_eq!(
            "arithmetic:3,4".parse::<SetSpec>().unwrap().label(),
            "arithmetic:3,4"
        );
        assert!("geometric:1".parse::<SetSpec>().is_err());
        assert!("arithmetic:3".parse::<SetSpec>().is_err());
        assert!("list:3,2".parse::<SetSpec>().is_err());
        assert!("odd".parse::<SetSpec>().is_err());
    }

    #[test]
    fn long_lists_get_short_labels() {
        assert_eq!(
            SetSpec::explicit(vec![2, 3, 5]).unwrap().label(),
            "list:2,3,5"
        );
        let long = SetSpec::explicit((1..=1000).collect()).unwrap();
        assert_eq!(
            long.label(),
            "list:1,2,3,4,5,6,7,8,9,10,...,999,1000 (1000 members)"
        );
    }

    #[test]
    fn split_keeps_multi_argument_sets() {
        assert_eq!(
            split_set_list("naturals,arithmetic:3,4,geometric:2,list:2,3,5"),
            vec!["naturals", "arithmetic:3,4", "geometric:2", "list:2,3,5"]
        );
    }

    #[test]
    fn set_file_errors_name_the_line() {
        assert_eq!(
            parse_set_file("# header\n2\n\n3\n10\n").unwrap(),
            vec![2, 3, 10]
        );
        assert_eq!(parse_set_file("2\nfoo\n").unwrap_err().0, 2);
        assert_eq!(parse_set_file("2\n5\n5\n").unwrap_err().0, 3);
        assert_eq!(parse_set_file("0\n").unwrap_err().0, 1);
        assert!(parse_set_file("# nothing\n").is_err());
    }

    #[test]
    fn random_sets_are_reproducible() {
        let a = SetSpec::random(64, 400, 7).unwrap();
        let b = SetSpec::random(64, 400, 7).unwrap();
        assert_eq!(a, b);
        let m = a.enumerate_up_to(400);
        assert_eq!(m.len(), 64);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert!(m[0] >= 2);
    }
}
