use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::error::Error;

/// Largest supported number of generators. Subsets are `u64` bitmasks.
pub const MAX_RANK: usize = 64;

/// Index of a generator in the fixed total order of a [`CoxeterMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u8);

impl Gen {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of the generators, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn full(rank: usize) -> GenSet {
        if rank >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << rank) - 1)
        }
    }

    pub fn single(g: Gen) -> GenSet {
        GenSet(1 << g.0)
    }

    #[inline]
    pub fn contains(self, g: Gen) -> bool {
        self.0 >> g.0 & 1 == 1
    }

    pub fn insert(&mut self, g: Gen) {
        self.0 |= 1 << g.0;
    }

    pub fn remove(&mut self, g: Gen) {
        self.0 &= !(1 << g.0);
    }

    pub fn with(mut self, g: Gen) -> GenSet {
        self.insert(g);
        self
    }

    pub fn without(mut self, g: Gen) -> GenSet {
        self.remove(g);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> GenSet {
        GenSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<Gen> {
        (self.0 != 0).then(|| Gen(self.0.trailing_zeros() as u8))
    }

    /// Generators in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = Gen> + Clone {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let g = bits.trailing_zeros() as u8;
            bits &= bits - 1;
            Some(Gen(g))
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = GenSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
            Some(GenSet(cur))
        })
    }
}

impl FromIterator<Gen> for GenSet {
    fn from_iter<I: IntoIterator<Item = Gen>>(iter: I) -> Self {
        let mut set = GenSet::EMPTY;
        for g in iter {
            set.insert(g);
        }
        set
    }
}

/// The order `m_st` of a product of two generators. Infinity is a sentinel,
/// never a large integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        use core::cmp::Ordering::*;
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinite) => Less,
            (Order::Infinite, Order::Finite(_)) => Greater,
            (Order::Infinite, Order::Infinite) => Equal,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl core::str::FromStr for Order {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        if s == "inf" {
            return Ok(Order::Infinite);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(());
        }
        s.parse::<u32>().map(Order::Finite).map_err(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `generators` before any other directive")]
    MissingGenerators { line: usize },
    #[error("line {line}: `generators` given twice")]
    RepeatedGenerators { line: usize },
    #[error("line {line}: `default` given twice")]
    RepeatedDefault { line: usize },
    #[error("line {line}: duplicate generator name `{name}`")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}: invalid generator name `{name}`")]
    InvalidName { line: usize, name: String },
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: invalid label `{label}` (expected an integer >= 2 or `inf`)")]
    InvalidLabel { line: usize, label: String },
    #[error("line {line}: edge joins `{name}` to itself")]
    SelfEdge { line: usize, name: String },
    #[error("line {line}: edge {a} {b} given twice")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("line {line}: malformed directive `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: at most {max} generators are supported")]
    TooManyGenerators { line: usize, max: usize },
    #[error("no `generators` line found")]
    Empty,
}

/// Symmetric matrix of orders `m_st` over a finite, ordered generator set.
///
/// Invariants: `m_ss = 1`, `m_st = m_ts`, and `m_st >= 2` for `s != t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    orders: Vec<Order>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl CoxeterMatrix {
    /// All off-diagonal entries set to `default`.
    pub fn new<S: AsRef<str>>(names: &[S], default: Order) -> Result<CoxeterMatrix, Error> {
        if names.len() > MAX_RANK {
            return Err(ParseError::TooManyGenerators { line: 0, max: MAX_RANK }.into());
        }
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(ParseError::InvalidName { line: 0, name: n.clone() }.into());
            }
            if names[..i].contains(n) {
                return Err(ParseError::DuplicateGenerator { line: 0, name: n.clone() }.into());
            }
        }
        if let Order::Finite(m) = default {
            if m < 2 {
                return Err(ParseError::InvalidLabel { line: 0, label: format!("{m}") }.into());
            }
        }
        let n = names.len();
        let mut orders = alloc::vec![default; n * n];
        for i in 0..n {
            orders[i * n + i] = Order::Finite(1);
        }
        Ok(CoxeterMatrix { names, orders })
    }

    /// Builds a matrix from names and `(a, b, m)` edges; unlisted pairs commute.
    pub fn from_edges(names: &[&str], edges: &[(&str, &str, Order)]) -> Result<CoxeterMatrix, Error> {
        let mut m = CoxeterMatrix::new(names, Order::Finite(2))?;
        for &(a, b, order) in edges {
            let (a, b) = (m.gen_checked(a)?, m.gen_checked(b)?);
            m.set(a, b, order)?;
        }
        Ok(m)
    }

    /// Parses the line-oriented diagram format:
    ///
    /// ```text
    /// generators s a b     # exactly once, first directive
    /// default 2            # optional
    /// edge a b 3           # any number; labels are integers >= 2 or `inf`
    /// ```
    pub fn parse(text: &str) -> Result<CoxeterMatrix, ParseError> {
        let mut names: Option<Vec<String>> = None;
        let mut default: Option<(usize, Order)> = None;
        let mut edges: Vec<(usize, String, String, Order)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut words = content.split_whitespace();
            let Some(head) = words.next() else { continue };
            let rest: Vec<&str> = words.collect();
            match head {
                "generators" => {
                    if names.is_some() {
                        return Err(ParseError::RepeatedGenerators { line });
                    }
                    if rest.len() > MAX_RANK {
                        return Err(ParseError::TooManyGenerators { line, max: MAX_RANK });
                    }
                    let mut list: Vec<String> = Vec::with_capacity(rest.len());
                    for name in rest {
                        if !valid_name(name) {
                            return Err(ParseError::InvalidName { line, name: name.to_string() });
                        }
                        if list.iter().any(|n| n == name) {
                            return Err(ParseError::DuplicateGenerator { line, name: name.to_string() });
                        }
                        list.push(name.to_string());
                    }
                    names = Some(list);
                }
                _ if names.is_none() => return Err(ParseError::MissingGenerators { line }),
                "default" => {
                    if default.is_some() {
                        return Err(ParseError::RepeatedDefault { line });
                    }
                    let [label] = rest[..] else {
                        return Err(ParseError::Malformed { line, text: content.trim().to_string() });
                    };
                    default = Some((line, parse_label(line, label)?));
                }
                "edge" => {
                    let [a, b, label] = rest[..] else {
                        return Err(ParseError::Malformed { line, text: content.trim().to_string() });
                    };
                    let order = parse_label(line, label)?;
                    edges.push((line, a.to_string(), b.to_string(), order));
                }
                _ => return Err(ParseError::Malformed { line, text: content.trim().to_string() }),
            }
        }

        let names = names.ok_or(ParseError::Empty)?;
        let default = default.map_or(Order::Finite(2), |(_, d)| d);
        let n = names.len();
        let mut orders = alloc::vec![default; n * n];
        for i in 0..n {
            orders[i * n + i] = Order::Finite(1);
        }
        let mut seen = alloc::collections::BTreeSet::new();
        let lookup = |line: usize, name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| ParseError::UnknownGenerator { line, name: name.to_string() })
        };
        for (line, a, b, order) in &edges {
            let (i, j) = (lookup(*line, a)?, lookup(*line, b)?);
            if i == j {
                return Err(ParseError::SelfEdge { line: *line, name: a.clone() });
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(ParseError::DuplicateEdge { line: *line, a: a.clone(), b: b.clone() });
            }
            orders[i * n + j] = *order;
            orders[j * n + i] = *order;
        }
        Ok(CoxeterMatrix { names, orders })
    }

    /// Renders the matrix in the diagram file format. Commuting pairs are left
    /// implicit; the output parses back to an equal matrix.
    pub fn to_diagram_text(&self) -> String {
        let mut out = String::from("generators");
        for n in &self.names {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        for a in self.gens() {
            for b in self.gens().filter(|b| *b > a) {
                let m = self.order(a, b);
                if m != Order::Finite(2) {
                    out.push_str(&format!("edge {} {} {}\n", self.name(a), self.name(b), m));
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + Clone {
        (0..self.rank() as u8).map(Gen)
    }

    pub fn all(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.index()]
    }

    pub fn gen(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| Gen(i as u8))
    }

    pub fn gen_checked(&self, name: &str) -> Result<Gen, Error> {
        self.gen(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    #[inline]
    pub fn order(&self, a: Gen, b: Gen) -> Order {
        self.orders[a.index() * self.rank() + b.index()]
    }

    /// Sets `m_ab = m_ba`. Rejects diagonal changes and labels below 2.
    pub fn set(&mut self, a: Gen, b: Gen, order: Order) -> Result<(), Error> {
        let n = self.rank();
        if a.index() >= n || b.index() >= n {
            return Err(Error::ForeignElement);
        }
        if a == b {
            return Err(ParseError::SelfEdge { line: 0, name: self.names[a.index()].clone() }.into());
        }
        if let Order::Finite(m) = order {
            if m < 2 {
                return Err(ParseError::InvalidLabel { line: 0, label: format!("{m}") }.into());
            }
        }
        self.orders[a.index() * n + b.index()] = order;
        self.orders[b.index() * n + a.index()] = order;
        Ok(())
    }

    pub fn contains_all(&self, set: GenSet) -> bool {
        set.is_subset(self.all())
    }

    /// Names of the generators in `set`, in generator order.
    pub fn names_of(&self, set: GenSet) -> Vec<String> {
        set.iter().map(|g| self.name(g).to_string()).collect()
    }

    /// Space-separated rendering of a word.
    pub fn word_to_string(&self, word: &[Gen]) -> String {
        let mut out = String::new();
        for (i, g) in word.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.name(*g));
        }
        out
    }

    /// Parses a space-separated word of generator names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Gen>, Error> {
        text.split_whitespace().map(|w| self.gen_checked(w)).collect()
    }

    /// The sub-matrix on `set`, keeping names and relative order.
    pub fn restrict(&self, set: GenSet) -> CoxeterMatrix {
        let gens: Vec<Gen> = set.iter().collect();
        let names: Vec<String> = gens.iter().map(|g| self.name(*g).to_string()).collect();
        let n = gens.len();
        let mut orders = Vec::with_capacity(n * n);
        for a in &gens {
            for b in &gens {
                orders.push(self.order(*a, *b));
            }
        }
        CoxeterMatrix { names, orders }
    }
}

fn parse_label(line: usize, label: &str) -> Result<Order, ParseError> {
    match label.parse::<Order>() {
        Ok(Order::Finite(m)) if m < 2 => Err(ParseError::InvalidLabel { line, label: label.to_string() }),
        Ok(order) => Ok(order),
        Err(()) => Err(ParseError::InvalidLabel { line, label: label.to_string() }),
    }
}
