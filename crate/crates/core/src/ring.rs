//! Finite unital rings with table arithmetic.
//!
//! Every ring stores a canonically ordered carrier of element codes
//! `0..size` together with full addition and multiplication tables, so all
//! arithmetic is a lookup. Structured rings (cyclic, products, GF(4),
//! matrix rings) are materialized into the same table form.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default upper bound on the carrier size of any constructed ring.
pub const DEFAULT_RING_CAP: usize = 256;

/// Index of an element in a ring's carrier.
pub type Code = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("elements belong to distinct rings `{left}` and `{right}`")]
    DistinctRings { left: RingId, right: RingId },
    #[error("code {code} is outside the carrier of `{ring}` (size {size})")]
    CodeOutOfRange { ring: RingId, code: Code, size: usize },
    #[error("ring carrier of size {size} exceeds the cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("ring axiom violated: {0}")]
    Axiom(RingLawViolation),
    #[error("ring `{0}` is not commutative")]
    NotCommutative(RingId),
    #[error("homomorphism `{0}` is not an endomorphism of the ring")]
    NotEndomorphism(String),
    #[error("recipe `{recipe}` does not apply to ring `{ring}`")]
    RecipeMismatch { recipe: String, ring: RingId },
}

/// Opaque ring identifier; rings are addressed by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(Arc<str>);

impl RingId {
    pub fn new(name: &str) -> Self {
        RingId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Cyclic { modulus: usize },
    Product(Vec<Arc<FiniteRing>>),
    Table,
    Gf4,
    Matrix { n: usize, modulus: usize },
}

/// A witness for a failed ring law.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum RingLawViolation {
    AddAssociative(Code, Code, Code),
    AddCommutative(Code, Code),
    AddIdentity(Code),
    AddInverse(Code),
    MulAssociative(Code, Code, Code),
    MulIdentity(Code),
    LeftDistributive(Code, Code, Code),
    RightDistributive(Code, Code, Code),
}

impl fmt::Display for RingLawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone)]
pub struct FiniteRing {
    id: RingId,
    kind: RingKind,
    names: Vec<String>,
    add: Vec<Code>,
    mul: Vec<Code>,
    neg: Vec<Code>,
    zero: Code,
    one: Code,
}

/// Structural equality: identifier, carrier names and both tables.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.same_structure(other)
    }
}

impl Eq for FiniteRing {}

/// An element of a specific ring. Equality is `(ring, code)` equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub ring: RingId,
    pub code: Code,
}

impl FiniteRing {
    fn from_raw(
        id: RingId,
        kind: RingKind,
        names: Vec<String>,
        add: Vec<Code>,
        mul: Vec<Code>,
        zero: Code,
        one: Code,
    ) -> Result<Self, RingError> {
        let n = names.len();
        if n == 0 {
            return Err(RingError::MalformedTable("empty carrier".into()));
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(RingError::MalformedTable(format!(
                "tables must be {n}x{n}"
            )));
        }
        if let Some(bad) = add.iter().chain(mul.iter()).find(|&&c| c >= n) {
            return Err(RingError::MalformedTable(format!(
                "table entry {bad} outside carrier of size {n}"
            )));
        }
        if zero >= n || one >= n {
            return Err(RingError::MalformedTable(
                "zero or one outside carrier".into(),
            ));
        }
        let mut neg = vec![usize::MAX; n];
        for (x, slot) in neg.iter_mut().enumerate() {
            if let Some(y) = (0..n).find(|&y| add[x * n + y] == zero) {
                *slot = y;
            }
        }
        if let Some(x) = neg.iter().position(|&y| y == usize::MAX) {
            return Err(RingError::Axiom(RingLawViolation::AddInverse(x)));
        }
        Ok(FiniteRing {
            id,
            kind,
            names,
            add,
            mul,
            neg,
            zero,
            one,
        })
    }

    /// The cyclic ring `Z_n`.
    pub fn cyclic(modulus: usize) -> Result<Arc<Self>, RingError> {
        Self::cyclic_with_cap(modulus, DEFAULT_RING_CAP)
    }

    pub fn cyclic_with_cap(modulus: usize, cap: usize) -> Result<Arc<Self>, RingError> {
        if modulus == 0 {
            return Err(RingError::ZeroModulus);
        }
        check_cap(modulus, cap)?;
        let n = modulus;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                add.push((x + y) % n);
                mul.push((x * y) % n);
            }
        }
        let names = (0..n).map(|x| x.to_string()).collect();
        Self::from_raw(
            RingId::new(&format!("Z{n}")),
            RingKind::Cyclic { modulus: n },
            names,
            add,
            mul,
            0,
            1 % n,
        )
        .map(Arc::new)
    }

    /// The field with four elements, built from `x^2 + x + 1` over `Z_2`.
    ///
    /// Codes: `0`, `1`, `2 = w`, `3 = w + 1`, i.e. the bit pattern of the
    /// coefficient vector `(c1, c0)`.
    pub fn gf4() -> Arc<Self> {
        let poly_mul = |x: usize, y: usize| -> usize {
            // carry-less product of two degree-1 polynomials, reduced by w^2 = w + 1
            let mut acc = 0usize;
            for bit in 0..2 {
                if y >> bit & 1 == 1 {
                    acc ^= x << bit;
                }
            }
            if acc & 0b100 != 0 {
                acc ^= 0b111;
            }
            acc
        };
        let mut add = Vec::with_capacity(16);
        let mut mul = Vec::with_capacity(16);
        for x in 0..4 {
            for y in 0..4 {
                add.push(x ^ y);
                mul.push(poly_mul(x, y));
            }
        }
        let names = ["0", "1", "w", "w+1"].iter().map(|s| s.to_string()).collect();
        Arc::new(
            Self::from_raw(RingId::new("GF4"), RingKind::Gf4, names, add, mul, 0, 1)
                .expect("GF(4) tables are well formed"),
        )
    }

    /// Direct product of the given factors with componentwise operations.
    ///
    /// Codes are mixed-radix with the first factor most significant.
    pub fn product(factors: &[Arc<FiniteRing>]) -> Result<Arc<Self>, RingError> {
        Self::product_with_cap(factors, DEFAULT_RING_CAP)
    }

    pub fn product_with_cap(
        factors: &[Arc<FiniteRing>],
        cap: usize,
    ) -> Result<Arc<Self>, RingError> {
        if factors.is_empty() {
            return Err(RingError::MalformedTable("product of no factors".into()));
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, r| acc.checked_mul(r.size()))
            .unwrap_or(usize::MAX);
        check_cap(size, cap)?;
        let decode = |mut code: usize| -> Vec<Code> {
            let mut parts = vec![0; factors.len()];
            for (i, r) in factors.iter().enumerate().rev() {
                parts[i] = code % r.size();
                code /= r.size();
            }
            parts
        };
        let encode = |parts: &[Code]| -> Code {
            parts
                .iter()
                .zip(factors)
                .fold(0, |acc, (&p, r)| acc * r.size() + p)
        };
        let decoded: Vec<Vec<Code>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in &decoded {
            for y in &decoded {
                let s: Vec<Code> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, r)| r.add_code(x[i], y[i]))
                    .collect();
                let p: Vec<Code> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, r)| r.mul_code(x[i], y[i]))
                    .collect();
                add.push(encode(&s));
                mul.push(encode(&p));
            }
        }
        let names = decoded
            .iter()
            .map(|parts| {
                let inner: Vec<&str> = parts
                    .iter()
                    .zip(factors)
                    .map(|(&p, r)| r.name_of(p))
                    .collect();
                format!("({})", inner.join(","))
            })
            .collect();
        let zero = encode(&factors.iter().map(|r| r.zero()).collect::<Vec<_>>());
        let one = encode(&factors.iter().map(|r| r.one()).collect::<Vec<_>>());
        let id = factors
            .iter()
            .map(|r| r.id().as_str().to_string())
            .collect::<Vec<_>>()
            .join("x");
        Self::from_raw(
            RingId::new(&id),
            RingKind::Product(factors.to_vec()),
            names,
            add,
            mul,
            zero,
            one,
        )
        .map(Arc::new)
    }

    /// The ring of `n x n` matrices over `Z_m`, as explicit tables.
    ///
    /// Codes enumerate entries row-major in base `m`, first entry most
    /// significant.
    pub fn matrix(n: usize, modulus: usize) -> Result<Arc<Self>, RingError> {
        Self::matrix_with_cap(n, modulus, DEFAULT_RING_CAP)
    }

    pub fn matrix_with_cap(n: usize, modulus: usize, cap: usize) -> Result<Arc<Self>, RingError> {
        if modulus == 0 {
            return Err(RingError::ZeroModulus);
        }
        if n == 0 {
            return Err(RingError::MalformedTable("matrix size must be at least 1".into()));
        }
        let entries = n * n;
        let size = (0..entries)
            .try_fold(1usize, |acc, _| acc.checked_mul(modulus))
            .unwrap_or(usize::MAX);
        check_cap(size, cap)?;
        let m = modulus;
        let decode = |mut code: usize| -> Vec<usize> {
            let mut v = vec![0; entries];
            for slot in v.iter_mut().rev() {
                *slot = code % m;
                code /= m;
            }
            v
        };
        let encode = |v: &[usize]| -> Code { v.iter().fold(0, |acc, &x| acc * m + x) };
        let decoded: Vec<Vec<usize>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in &decoded {
            for y in &decoded {
                let s: Vec<usize> = x.iter().zip(y).map(|(a, b)| (a + b) % m).collect();
                let mut p = vec![0; entries];
                for i in 0..n {
                    for j in 0..n {
                        p[i * n + j] = (0..n).map(|k| x[i * n + k] * y[k * n + j]).sum::<usize>() % m;
                    }
                }
                add.push(encode(&s));
                mul.push(encode(&p));
            }
        }
        let names = decoded
            .iter()
            .map(|v| {
                let rows: Vec<String> = v
                    .chunks(n)
                    .map(|row| {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            })
            .collect();
        let mut identity = vec![0; entries];
        for i in 0..n {
            identity[i * n + i] = 1 % m;
        }
        Self::from_raw(
            RingId::new(&format!("M{n}(Z{m})")),
            RingKind::Matrix { n, modulus: m },
            names,
            add,
            mul,
            0,
            encode(&identity),
        )
        .map(Arc::new)
    }

    /// A ring given by explicit row-major tables; the full axiom suite is
    /// checked before the ring is returned.
    pub fn from_tables(
        id: &str,
        names: Option<Vec<String>>,
        add: Vec<Vec<Code>>,
        mul: Vec<Vec<Code>>,
        zero: Code,
        one: Code,
    ) -> Result<Arc<Self>, RingError> {
        Self::from_tables_with_cap(id, names, add, mul, zero, one, DEFAULT_RING_CAP)
    }

    pub fn from_tables_with_cap(
        id: &str,
        names: Option<Vec<String>>,
        add: Vec<Vec<Code>>,
        mul: Vec<Vec<Code>>,
        zero: Code,
        one: Code,
        cap: usize,
    ) -> Result<Arc<Self>, RingError> {
        let n = add.len();
        check_cap(n, cap)?;
        if mul.len() != n || add.iter().chain(mul.iter()).any(|row| row.len() != n) {
            return Err(RingError::MalformedTable(format!(
                "tables must be square of side {n}"
            )));
        }
        let names = match names {
            Some(names) if names.len() == n => names,
            Some(names) => {
                return Err(RingError::MalformedTable(format!(
                    "{} element names for a carrier of size {n}",
                    names.len()
                )))
            }
            None => (0..n).map(|x| x.to_string()).collect(),
        };
        let ring = Self::from_raw(
            RingId::new(id),
            RingKind::Table,
            names,
            add.concat(),
            mul.concat(),
            zero,
            one,
        )?;
        if let Some(v) = ring.check_axioms().into_iter().next() {
            return Err(RingError::Axiom(v));
        }
        Ok(Arc::new(ring))
    }

    /// A copy of this ring under a different identifier.
    pub fn renamed(&self, id: &str) -> Arc<Self> {
        let mut r = self.clone();
        r.id = RingId::new(id);
        Arc::new(r)
    }

    pub fn id(&self) -> &RingId {
        &self.id
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> Code {
        self.zero
    }

    pub fn one(&self) -> Code {
        self.one
    }

    pub fn name_of(&self, code: Code) -> &str {
        &self.names[code]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Same carrier, names and tables, ignoring the identifier.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.names == other.names
            && self.add == other.add
            && self.mul == other.mul
            && self.zero == other.zero
            && self.one == other.one
    }

    /// Row-major addition table.
    pub fn add_table(&self) -> Vec<Vec<Code>> {
        self.add.chunks(self.size()).map(|r| r.to_vec()).collect()
    }

    /// Row-major multiplication table.
    pub fn mul_table(&self) -> Vec<Vec<Code>> {
        self.mul.chunks(self.size()).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn add_code(&self, x: Code, y: Code) -> Code {
        self.add[x * self.size() + y]
    }

    #[inline]
    pub fn mul_code(&self, x: Code, y: Code) -> Code {
        self.mul[x * self.size() + y]
    }

    #[inline]
    pub fn neg_code(&self, x: Code) -> Code {
        self.neg[x]
    }

    #[inline]
    pub fn sub_code(&self, x: Code, y: Code) -> Code {
        self.add_code(x, self.neg_code(y))
    }

    pub fn codes(&self) -> std::ops::Range<Code> {
        0..self.size()
    }

    pub fn element(&self, code: Code) -> Result<RingElement, RingError> {
        if code >= self.size() {
            return Err(RingError::CodeOutOfRange {
                ring: self.id.clone(),
                code,
                size: self.size(),
            });
        }
        Ok(RingElement {
            ring: self.id.clone(),
            code,
        })
    }

    fn own(&self, x: &RingElement) -> Result<Code, RingError> {
        if x.ring != self.id {
            return Err(RingError::DistinctRings {
                left: self.id.clone(),
                right: x.ring.clone(),
            });
        }
        if x.code >= self.size() {
            return Err(RingError::CodeOutOfRange {
                ring: self.id.clone(),
                code: x.code,
                size: self.size(),
            });
        }
        Ok(x.code)
    }

    fn pair(&self, x: &RingElement, y: &RingElement) -> Result<(Code, Code), RingError> {
        if x.ring != y.ring {
            return Err(RingError::DistinctRings {
                left: x.ring.clone(),
                right: y.ring.clone(),
            });
        }
        Ok((self.own(x)?, self.own(y)?))
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, RingError> {
        let (a, b) = self.pair(x, y)?;
        self.element(self.add_code(a, b))
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> Result<RingElement, RingError> {
        let (a, b) = self.pair(x, y)?;
        self.element(self.mul_code(a, b))
    }

    pub fn is_commutative(&self) -> bool {
        self.codes()
            .all(|x| self.codes().all(|y| self.mul_code(x, y) == self.mul_code(y, x)))
    }

    pub fn is_central_code(&self, x: Code) -> bool {
        self.codes()
            .all(|y| self.mul_code(x, y) == self.mul_code(y, x))
    }

    /// Zero divisor in the two-sided sense; zero itself counts.
    pub fn is_zero_divisor_code(&self, x: Code) -> bool {
        if x == self.zero {
            return true;
        }
        self.codes().any(|y| {
            y != self.zero && (self.mul_code(x, y) == self.zero || self.mul_code(y, x) == self.zero)
        })
    }

    pub fn is_zero_divisor(&self, x: &RingElement) -> Result<bool, RingError> {
        Ok(self.is_zero_divisor_code(self.own(x)?))
    }

    /// Some `b` with `b * x = 1`.
    pub fn left_inverse_code(&self, x: Code) -> Option<Code> {
        self.codes().find(|&b| self.mul_code(b, x) == self.one)
    }

    /// Codes `y` with `x * y = 0`, in carrier order.
    pub fn annihilator_codes(&self, x: Code) -> Vec<Code> {
        self.codes()
            .filter(|&y| self.mul_code(x, y) == self.zero)
            .collect()
    }

    /// The annihilator of `x`; defined only for commutative rings.
    pub fn annihilator(&self, x: &RingElement) -> Result<Vec<RingElement>, RingError> {
        let code = self.own(x)?;
        if !self.is_commutative() {
            return Err(RingError::NotCommutative(self.id.clone()));
        }
        Ok(self
            .annihilator_codes(code)
            .into_iter()
            .map(|c| RingElement {
                ring: self.id.clone(),
                code: c,
            })
            .collect())
    }

    pub fn center_codes(&self) -> Vec<Code> {
        self.codes().filter(|&x| self.is_central_code(x)).collect()
    }

    pub fn center(&self) -> Vec<RingElement> {
        self.center_codes()
            .into_iter()
            .map(|c| RingElement {
                ring: self.id.clone(),
                code: c,
            })
            .collect()
    }

    /// Commutative, nonzero and without nonzero zero divisors.
    pub fn is_integral_domain(&self) -> bool {
        self.zero != self.one
            && self.is_commutative()
            && self
                .codes()
                .filter(|&x| x != self.zero)
                .all(|x| !self.is_zero_divisor_code(x))
    }

    /// Exhaustive check of the ring axioms, returning every violation.
    pub fn check_axioms(&self) -> Vec<RingLawViolation> {
        use RingLawViolation::*;
        let mut out = Vec::new();
        for x in self.codes() {
            if self.add_code(x, self.zero) != x || self.add_code(self.zero, x) != x {
                out.push(AddIdentity(x));
            }
            if self.add_code(x, self.neg_code(x)) != self.zero {
                out.push(AddInverse(x));
            }
            if self.mul_code(x, self.one) != x || self.mul_code(self.one, x) != x {
                out.push(MulIdentity(x));
            }
            for y in self.codes() {
                if self.add_code(x, y) != self.add_code(y, x) {
                    out.push(AddCommutative(x, y));
                }
                for z in self.codes() {
                    let xy = self.add_code(x, y);
                    if self.add_code(xy, z) != self.add_code(x, self.add_code(y, z)) {
                        out.push(AddAssociative(x, y, z));
                    }
                    if self.mul_code(self.mul_code(x, y), z)
                        != self.mul_code(x, self.mul_code(y, z))
                    {
                        out.push(MulAssociative(x, y, z));
                    }
                    if self.mul_code(x, self.add_code(y, z))
                        != self.add_code(self.mul_code(x, y), self.mul_code(x, z))
                    {
                        out.push(LeftDistributive(x, y, z));
                    }
                    if self.mul_code(xy, z)
                        != self.add_code(self.mul_code(x, z), self.mul_code(y, z))
                    {
                        out.push(RightDistributive(x, y, z));
                    }
                }
            }
        }
        out
    }
}

fn check_cap(size: usize, cap: usize) -> Result<(), RingError> {
    if size > cap {
        Err(RingError::SizeCap { size, cap })
    } else {
        Ok(())
    }
}

/// How a homomorphism table was produced; kept for printing and
/// round-tripping, never consulted by arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomRecipe {
    Identity,
    Swap,
    Frobenius,
    Table,
}

impl HomRecipe {
    pub fn name(&self) -> &'static str {
        match self {
            HomRecipe::Identity => "identity",
            HomRecipe::Swap => "swap",
            HomRecipe::Frobenius => "frobenius",
            HomRecipe::Table => "table",
        }
    }
}

/// A map between finite rings stored as a full element table.
#[derive(Debug, Clone)]
pub struct RingHom {
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    table: Vec<Code>,
    recipe: HomRecipe,
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.table == other.table
    }
}

impl Eq for RingHom {}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum HomViolation {
    Additive(Code, Code),
    Multiplicative(Code, Code),
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomReport {
    pub violations: Vec<HomViolation>,
}

impl HomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl RingHom {
    /// Wraps an explicit table; the homomorphism laws are not checked here.
    pub fn from_table(
        domain: Arc<FiniteRing>,
        codomain: Arc<FiniteRing>,
        table: Vec<Code>,
    ) -> Result<Self, RingError> {
        if table.len() != domain.size() {
            return Err(RingError::MalformedTable(format!(
                "hom table has {} entries, domain has {}",
                table.len(),
                domain.size()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&c| c >= codomain.size()) {
            return Err(RingError::CodeOutOfRange {
                ring: codomain.id().clone(),
                code: bad,
                size: codomain.size(),
            });
        }
        Ok(RingHom {
            domain,
            codomain,
            table,
            recipe: HomRecipe::Table,
        })
    }

    pub fn identity(ring: Arc<FiniteRing>) -> Self {
        let table = ring.codes().collect();
        RingHom {
            domain: ring.clone(),
            codomain: ring,
            table,
            recipe: HomRecipe::Identity,
        }
    }

    /// Coordinate swap on a product of two structurally equal factors.
    pub fn swap(ring: Arc<FiniteRing>) -> Result<Self, RingError> {
        let factors = match ring.kind() {
            RingKind::Product(f) if f.len() == 2 && f[0].same_structure(&f[1]) => f.clone(),
            _ => {
                return Err(RingError::RecipeMismatch {
                    recipe: "swap".into(),
                    ring: ring.id().clone(),
                })
            }
        };
        let k = factors[1].size();
        let table = ring.codes().map(|c| (c % k) * k + c / k).collect();
        Ok(RingHom {
            domain: ring.clone(),
            codomain: ring,
            table,
            recipe: HomRecipe::Swap,
        })
    }

    /// The squaring map `x -> x^2`. Whether it is a homomorphism depends on
    /// the ring; `validate` decides.
    pub fn frobenius(ring: Arc<FiniteRing>) -> Self {
        let table = ring.codes().map(|x| ring.mul_code(x, x)).collect();
        RingHom {
            domain: ring.clone(),
            codomain: ring,
            table,
            recipe: HomRecipe::Frobenius,
        }
    }

    pub fn domain(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        &self.codomain
    }

    pub fn table(&self) -> &[Code] {
        &self.table
    }

    pub fn recipe(&self) -> &HomRecipe {
        &self.recipe
    }

    #[inline]
    pub fn apply_code(&self, x: Code) -> Code {
        self.table[x]
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement, RingError> {
        let code = self.domain.own(x)?;
        self.codomain.element(self.table[code])
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn is_identity(&self) -> bool {
        self.is_endomorphism() && self.table.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RingHom) -> Result<RingHom, RingError> {
        if inner.codomain != self.domain {
            return Err(RingError::DistinctRings {
                left: inner.codomain.id().clone(),
                right: self.domain.id().clone(),
            });
        }
        Ok(RingHom {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            table: inner.table.iter().map(|&c| self.table[c]).collect(),
            recipe: HomRecipe::Table,
        })
    }

    /// The same table with one entry replaced; used by mutation tests.
    pub fn with_entry(&self, x: Code, image: Code) -> Result<RingHom, RingError> {
        let mut table = self.table.clone();
        if x >= table.len() {
            return Err(RingError::CodeOutOfRange {
                ring: self.domain.id().clone(),
                code: x,
                size: table.len(),
            });
        }
        table[x] = image;
        RingHom::from_table(self.domain.clone(), self.codomain.clone(), table)
    }

    /// Exhaustive check of additivity, multiplicativity and unit
    /// preservation, listing every violated pair.
    pub fn validate(&self) -> HomReport {
        let d = &self.domain;
        let c = &self.codomain;
        let mut violations = Vec::new();
        if self.table[d.one()] != c.one() {
            violations.push(HomViolation::Unit);
        }
        for x in d.codes() {
            for y in d.codes() {
                if self.table[d.add_code(x, y)] != c.add_code(self.table[x], self.table[y]) {
                    violations.push(HomViolation::Additive(x, y));
                }
                if self.table[d.mul_code(x, y)] != c.mul_code(self.table[x], self.table[y]) {
                    violations.push(HomViolation::Multiplicative(x, y));
                }
            }
        }
        HomReport { violations }
    }
}

/// Elements fixed by every given endomorphism of `ring`.
pub fn fixed_elements(ring: &FiniteRing, homs: &[RingHom]) -> Result<Vec<RingElement>, RingError> {
    for h in homs {
        if h.domain.as_ref() != ring || h.codomain.as_ref() != ring {
            return Err(RingError::NotEndomorphism(format!(
                "{} -> {}",
                h.domain.id(),
                h.codomain.id()
            )));
        }
    }
    Ok(ring
        .codes()
        .filter(|&x| homs.iter().all(|h| h.apply_code(x) == x))
        .map(|code| RingElement {
            ring: ring.id().clone(),
            code,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(r: &FiniteRing, c: Code) -> RingElement {
        r.element(c).unwrap()
    }

    fn z2xz2() -> Arc<FiniteRing> {
        let z2 = FiniteRing::cyclic(2).unwrap();
        FiniteRing::product(&[z2.clone(), z2]).unwrap()
    }

    #[test]
    fn cyclic_arithmetic() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        assert_eq!(z4.add(&el(&z4, 2), &el(&z4, 3)).unwrap().code, 1);
        assert_eq!(z4.mul(&el(&z4, 2), &el(&z4, 2)).unwrap().code, 0);
        for x in z4.codes() {
            assert_eq!(z4.add_code(x, z4.zero()), x);
            assert_eq!(z4.mul_code(x, z4.one()), x);
        }
    }

    #[test]
    fn product_addition_is_componentwise() {
        let r = z2xz2();
        // (1,0) has code 2, (0,1) code 1, (1,1) code 3
        assert_eq!(r.name_of(2), "(1,0)");
        assert_eq!(r.add_code(2, 1), 3);
        assert_eq!(r.name_of(3), "(1,1)");
    }

    #[test]
    fn distinct_rings_are_rejected() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let z5 = FiniteRing::cyclic(5).unwrap();
        let err = z4.add(&el(&z4, 1), &el(&z5, 1)).unwrap_err();
        assert!(matches!(err, RingError::DistinctRings { .. }));
        assert!(z4.mul(&el(&z5, 1), &el(&z5, 1)).is_err());
    }

    #[test]
    fn gf4_multiplication() {
        let f = FiniteRing::gf4();
        assert!(f.check_axioms().is_empty());
        assert_eq!(f.name_of(f.mul_code(2, 2)), "w+1");
        assert!(f.is_integral_domain());
    }

    #[test]
    fn zero_divisors() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let z5 = FiniteRing::cyclic(5).unwrap();
        assert!(z4.is_zero_divisor(&el(&z4, 2)).unwrap());
        assert!(!z5.is_zero_divisor(&el(&z5, 2)).unwrap());
        assert!(z5.is_zero_divisor(&el(&z5, 0)).unwrap());
        let p = z2xz2();
        assert!(p.is_zero_divisor(&el(&p, 2)).unwrap());
    }

    #[test]
    fn annihilators() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let codes: Vec<_> = z4.annihilator(&el(&z4, 2)).unwrap().iter().map(|e| e.code).collect();
        assert_eq!(codes, vec![0, 2]);
        let z2 = FiniteRing::cyclic(2).unwrap();
        assert_eq!(z2.annihilator(&el(&z2, 1)).unwrap().len(), 1);
        let p = z2xz2();
        let codes: Vec<_> = p.annihilator(&el(&p, 2)).unwrap().iter().map(|e| e.code).collect();
        assert_eq!(codes, vec![0, 1]);
        let m = FiniteRing::matrix(2, 2).unwrap();
        assert!(matches!(
            m.annihilator(&el(&m, 1)),
            Err(RingError::NotCommutative(_))
        ));
    }

    #[test]
    fn centers() {
        assert_eq!(FiniteRing::cyclic(6).unwrap().center().len(), 6);
        assert_eq!(z2xz2().center().len(), 4);
        let m = FiniteRing::matrix(2, 2).unwrap();
        let c = m.center_codes();
        assert_eq!(c, vec![m.zero(), m.one()]);
        assert_eq!(m.name_of(m.one()), "[[1,0],[0,1]]");
    }

    #[test]
    fn integral_domains() {
        assert!(FiniteRing::cyclic(5).unwrap().is_integral_domain());
        assert!(!FiniteRing::cyclic(4).unwrap().is_integral_domain());
        assert!(!FiniteRing::cyclic(1).unwrap().is_integral_domain());
        assert!(!FiniteRing::matrix(2, 2).unwrap().is_integral_domain());
    }

    #[test]
    fn hom_validation() {
        let f = FiniteRing::gf4();
        assert!(RingHom::frobenius(f).validate().is_valid());
        assert!(RingHom::swap(z2xz2()).unwrap().validate().is_valid());
        let z4 = FiniteRing::cyclic(4).unwrap();
        let doubling = RingHom::from_table(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let report = doubling.validate();
        assert!(report.violations.contains(&HomViolation::Unit));
        assert!(RingHom::swap(z4).is_err());
    }

    #[test]
    fn fixed_points() {
        let f = FiniteRing::gf4();
        let fixed = fixed_elements(&f, &[RingHom::frobenius(f.clone())]).unwrap();
        assert_eq!(fixed.iter().map(|e| e.code).collect::<Vec<_>>(), vec![0, 1]);
        let p = z2xz2();
        let fixed = fixed_elements(&p, &[RingHom::swap(p.clone()).unwrap()]).unwrap();
        assert_eq!(fixed.iter().map(|e| e.code).collect::<Vec<_>>(), vec![0, 3]);
        let z3 = FiniteRing::cyclic(3).unwrap();
        assert_eq!(fixed_elements(&z3, &[RingHom::identity(z3.clone())]).unwrap().len(), 3);
        let z5 = FiniteRing::cyclic(5).unwrap();
        assert!(fixed_elements(&z3, &[RingHom::identity(z5)]).is_err());
    }

    #[test]
    fn explicit_tables_are_checked() {
        let z3 = FiniteRing::cyclic(3).unwrap();
        let ok = FiniteRing::from_tables("T", None, z3.add_table(), z3.mul_table(), 0, 1).unwrap();
        assert!(ok.same_structure(&z3));
        let mut bad_mul = z3.mul_table();
        bad_mul[2][2] = 2;
        assert!(matches!(
            FiniteRing::from_tables("T", None, z3.add_table(), bad_mul, 0, 1),
            Err(RingError::Axiom(_))
        ));
        assert!(matches!(
            FiniteRing::cyclic_with_cap(300, 256),
            Err(RingError::SizeCap { size: 300, cap: 256 })
        ));
    }
}
