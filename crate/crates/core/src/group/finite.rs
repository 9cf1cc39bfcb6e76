use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::numtheory::factorize;

/// Orders up to this size get the exhaustive associativity check; above it
/// a deterministic sample of triples is used.
pub const EXHAUSTIVE_AXIOM_BOUND: usize = 240;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupFamily {
    Cyclic(usize),
    Dihedral(usize),
    /// `(prime, exponent)` factors of the order, one `C_p^a` block each.
    ElemAbProduct(Vec<(u64, u32)>),
    Generic,
}

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    family: GroupFamily,
    generators: Vec<(String, usize)>,
}

impl FiniteGroup {
    /// Build from a full multiplication table (`table[a][b] = a*b`).
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<(String, usize)>) -> Result<Self> {
        let order = table.len();
        if order == 0 || table.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return Err(Error::InvalidGroup("multiplication table must be square with entries in range".into()));
        }
        let mul: Vec<u32> = table.into_iter().flatten().map(|x| x as u32).collect();
        Self::from_flat(order, mul, GroupFamily::Generic, generators)
    }

    fn from_flat(order: usize, mul: Vec<u32>, family: GroupFamily, generators: Vec<(String, usize)>) -> Result<Self> {
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inv[a] = b as u32;
        }
        let g = FiniteGroup { order, mul, inv, identity, family, generators };
        g.check_associativity()?;
        if g.generate(&g.generators.iter().map(|(_, e)| *e).collect::<Vec<_>>()).len() != order {
            return Err(Error::InvalidGroup("named generators do not generate the group".into()));
        }
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let triple_ok = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_AXIOM_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::InvalidGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            // linear congruential sample, deterministic
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..200_000 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (s >> 33) as usize % n;
                let b = (s >> 13) as usize % n;
                let c = (s >> 43) as usize % n;
                if !triple_ok(a, b, c) {
                    return Err(Error::InvalidGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        Ok(())
    }

    /// Identity, inverse and associativity laws (exhaustive up to
    /// [`EXHAUSTIVE_AXIOM_BOUND`]).
    pub fn check_axioms(&self) -> Result<()> {
        for a in 0..self.order {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return Err(Error::InvalidGroup(format!("identity law fails at {a}")));
            }
            if self.mul(a, self.inv(a)) != self.identity {
                return Err(Error::InvalidGroup(format!("inverse law fails at {a}")));
            }
        }
        self.check_associativity()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, label: &str) -> Option<usize> {
        self.generators.iter().find(|(l, _)| l == label).map(|(_, e)| *e)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// `g h g^{-1}`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        if let GroupFamily::Cyclic(n) = self.family {
            return Some(if n == 1 { self.identity } else { 1 });
        }
        (0..self.order).find(|&a| self.element_order(a) == self.order)
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn name(&self) -> String {
        match &self.family {
            GroupFamily::Cyclic(n) => format!("C{n}"),
            GroupFamily::Dihedral(n) => format!("D{n}"),
            GroupFamily::ElemAbProduct(_) => format!("L{}", self.order),
            GroupFamily::Generic => format!("G{}", self.order),
        }
    }

    /// Human-readable label of an element in terms of the family's generators.
    pub fn element_label(&self, a: usize) -> String {
        let power = |name: &str, k: usize| match k {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{k}"),
        };
        let label = match &self.family {
            GroupFamily::Cyclic(_) => power("g", a),
            GroupFamily::Dihedral(n) => {
                let (i, s) = (a % n, a / n);
                [power("x", i), power("y", s)].into_iter().filter(|p| !p.is_empty()).collect::<Vec<_>>().join(" ")
            }
            GroupFamily::ElemAbProduct(_) => {
                let digits = self.elem_ab_digits(a);
                let parts: Vec<String> =
                    digits.iter().enumerate().map(|(i, &(_, d))| power(&format!("e{}", i + 1), d)).filter(|p| !p.is_empty()).collect();
                parts.join(" ")
            }
            GroupFamily::Generic => format!("#{a}"),
        };
        if label.is_empty() {
            "e".into()
        } else {
            label
        }
    }

    /// The subgroup as a group in its own right, together with the embedding
    /// of its elements into `self`. Cyclic subgroups come back with family
    /// `Cyclic(m)` and element `k` equal to `gen^k`.
    pub fn subgroup_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let m = h.order();
        let cyc = h.elements().iter().copied().find(|&a| self.element_order(a) == m);
        if let Some(gen) = cyc {
            let embed: Vec<usize> = (0..m).map(|k| self.pow(gen, k)).collect();
            let mut g = cyclic_group(m);
            g.generators = vec![("g".into(), if m == 1 { 0 } else { 1 })];
            return (g, embed);
        }
        let embed = h.elements().to_vec();
        let pos: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &embed {
            for &b in &embed {
                mul.push(pos[&self.mul(a, b)] as u32);
            }
        }
        let gens = (0..m).map(|i| (format!("h{i}"), i)).collect();
        let g = FiniteGroup::from_flat(m, mul, GroupFamily::Generic, gens).expect("subgroup closed under multiplication");
        (g, embed)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name(), self.order)
    }
}

/// The cyclic group `C_n = <g | g^n>`; element `k` is `g^k`.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
    FiniteGroup {
        order: n,
        mul,
        inv: (0..n).map(|a| ((n - a) % n) as u32).collect(),
        identity: 0,
        family: GroupFamily::Cyclic(n),
        generators: vec![("g".into(), if n == 1 { 0 } else { 1 })],
    }
}

/// The dihedral group `D_n = <x, y | x^n = y^2 = 1, yx = x^{-1}y>` of order
/// `2n`; element `i + n*s` is `x^i y^s`.
pub fn dihedral_group(n: usize) -> FiniteGroup {
    assert!(n >= 1, "dihedral group needs n >= 1");
    let order = 2 * n;
    let decode = |a: usize| (a % n, a / n);
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        let (i, s) = decode(a);
        for b in 0..order {
            let (j, t) = decode(b);
            // x^i y^s x^j y^t = x^{i + (-1)^s j} y^{s+t}
            let k = if s == 0 { (i + j) % n } else { (i + n - j) % n };
            mul.push((k + n * ((s + t) % 2)) as u32);
        }
    }
    let inv = (0..order)
        .map(|a| {
            let (i, s) = decode(a);
            if s == 0 {
                ((n - i) % n) as u32
            } else {
                a as u32
            }
        })
        .collect();
    let x = if n == 1 { 0 } else { 1 };
    FiniteGroup {
        order,
        mul,
        inv,
        identity: 0,
        family: GroupFamily::Dihedral(n),
        generators: vec![("x".into(), x), ("y".into(), n)],
    }
}

/// `L_n`: the product of elementary abelian groups `(C_{p_1})^{a_1} x ...`
/// read off the prime factorization of `n`. Elements are mixed-radix
/// tuples, first factor least significant.
pub fn elem_ab_product(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("L_n needs n >= 2, got {n}")));
    }
    let factors = factorize(n as u64);
    let radices: Vec<usize> = factors.iter().flat_map(|&(p, a)| std::iter::repeat_n(p as usize, a as usize)).collect();
    let digits = |mut a: usize| -> Vec<usize> {
        radices
            .iter()
            .map(|&p| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    };
    let encode = |ds: &[usize]| ds.iter().zip(&radices).rev().fold(0, |acc, (d, p)| acc * p + d);
    let mut mul = Vec::with_capacity(n * n);
    let mut inv = Vec::with_capacity(n);
    for a in 0..n {
        let da = digits(a);
        for b in 0..n {
            let db = digits(b);
            let s: Vec<usize> = da.iter().zip(&db).zip(&radices).map(|((x, y), p)| (x + y) % p).collect();
            mul.push(encode(&s) as u32);
        }
        let ni: Vec<usize> = da.iter().zip(&radices).map(|(x, p)| (p - x) % p).collect();
        inv.push(encode(&ni) as u32);
    }
    let mut stride = 1;
    let mut generators = Vec::new();
    for (i, p) in radices.iter().enumerate() {
        generators.push((format!("e{}", i + 1), stride));
        stride *= p;
    }
    Ok(FiniteGroup { order: n, mul, inv, identity: 0, family: GroupFamily::ElemAbProduct(factors), generators })
}

impl FiniteGroup {
    /// Digits of an `L_n` element, one per cyclic factor (empty otherwise).
    pub fn elem_ab_digits(&self, mut a: usize) -> Vec<(u64, usize)> {
        let GroupFamily::ElemAbProduct(factors) = &self.family else { return Vec::new() };
        let mut out = Vec::new();
        for &(p, e) in factors {
            for _ in 0..e {
                out.push((p, a % p as usize));
                a /= p as usize;
            }
        }
        out
    }
}

/// A group literal `C6`, `D15`, `L12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    C(usize),
    D(usize),
    L(usize),
}

impl GroupSpec {
    pub fn n(&self) -> usize {
        match *self {
            GroupSpec::C(n) | GroupSpec::D(n) | GroupSpec::L(n) => n,
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        match *self {
            GroupSpec::C(n) if n >= 1 => Ok(cyclic_group(n)),
            GroupSpec::D(n) if n >= 1 => Ok(dihedral_group(n)),
            GroupSpec::L(n) => elem_ab_product(n),
            _ => Err(Error::InvalidArgument(format!("group order parameter must be positive in {self}"))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::C(n) => write!(f, "C{n}"),
            GroupSpec::D(n) => write!(f, "D{n}"),
            GroupSpec::L(n) => write!(f, "L{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty group literal".into()))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("group literal `{s}`: expected C, D or L followed by a decimal number")));
        }
        let n: usize = digits.parse().map_err(|_| Error::Parse(format!("group literal `{s}`: number out of range")))?;
        match letter {
            'C' => Ok(GroupSpec::C(n)),
            'D' => Ok(GroupSpec::D(n)),
            'L' => Ok(GroupSpec::L(n)),
            _ => Err(Error::Parse(format!("group literal `{s}`: unknown family `{letter}`"))),
        }
    }
}
