use serde::Serialize;

/// How an identity is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdentityKind {
    /// Equality of exact combinations with rational coefficients.
    #[serde(rename = "exact-symbolic")]
    Exact,
    /// Residual of ζ-values against a tolerance.
    #[serde(rename = "numeric")]
    Numeric,
}

impl IdentityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityKind::Exact => "exact-symbolic",
            IdentityKind::Numeric => "numeric",
        }
    }
}

/// Grid parameters an identity can be swept over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    S,
    T,
    L,
    M,
    P,
    Q,
    /// Weight of the index `k` for identities quantified over indices.
    Weight,
}

impl Param {
    pub const ALL: [Param; 7] = [
        Param::S,
        Param::T,
        Param::L,
        Param::M,
        Param::P,
        Param::Q,
        Param::Weight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::S => "s",
            Param::T => "t",
            Param::L => "l",
            Param::M => "m",
            Param::P => "p",
            Param::Q => "q",
            Param::Weight => "weight",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySpec {
    pub name: &'static str,
    pub kind: IdentityKind,
    /// The statement being checked, in plain notation.
    pub statement: &'static str,
    pub hypotheses: &'static str,
    /// Grid parameters with their default values.
    pub params: &'static [(Param, DefaultValues)],
}

/// Default values of a grid parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DefaultValues {
    /// Inclusive range.
    Span(u32, u32),
    /// Every position `1..=l+1`, resolved per grid point.
    Positions,
}

use DefaultValues::Span;
use IdentityKind::{Exact, Numeric};
use Param::{Weight, L, M, P, Q, S, T};

pub(crate) const REGISTRY: [IdentitySpec; 16] = [
    IdentitySpec {
        name: "duality",
        kind: Numeric,
        statement: "ζ(k) = ζ(k†)",
        hypotheses: "k admissible",
        params: &[(Weight, Span(2, 5))],
    },
    IdentitySpec {
        name: "ohno",
        kind: Numeric,
        statement: "𝒪_m(k) = 𝒪_m(k†)",
        hypotheses: "k admissible, m ≥ 0",
        params: &[(Weight, Span(2, 5)), (M, Span(0, 2))],
    },
    IdentitySpec {
        name: "stuffle_single",
        kind: Numeric,
        statement: "ζ(s)·ζ(k) = ζ((s)♯k + (s) hast k)",
        hypotheses: "s ≥ 2, k admissible",
        params: &[(S, Span(2, 3)), (Weight, Span(2, 4))],
    },
    IdentitySpec {
        name: "hoffman",
        kind: Numeric,
        statement: "Σ_i ζ(…, k_i+1, …) = Σ_{k_i≥2} Σ_{j=0}^{k_i−2} ζ(…, j+1, k_i−j, …)",
        hypotheses: "k admissible",
        params: &[(Weight, Span(2, 5))],
    },
    IdentitySpec {
        name: "hmos",
        kind: Numeric,
        statement: "F_{m,0}(s;(t+1)) = F_{m,0}(t;(s+1))",
        hypotheses: "s, t ≥ 2",
        params: &[(S, Span(2, 4)), (T, Span(2, 4)), (M, Span(0, 2))],
    },
    IdentitySpec {
        name: "main",
        kind: Numeric,
        statement: "F_{m,l}(s;(t+1)) = F_{m,l}(t;(s+1)), i.e. D_{m,l}(s,t) = 0",
        hypotheses: "s, t ≥ 2, l ≥ 0",
        params: &[(S, Span(2, 3)), (T, Span(2, 3)), (L, Span(0, 1)), (M, Span(0, 1))],
    },
    IdentitySpec {
        name: "lemma_fmpre1",
        kind: Numeric,
        statement: "F_{m,l}(s;(t+1)) = −Σ_{m1+m2=m} Σ_{|e|=m2} (s+m1) hast (K⊕e) + the same with K†, K = (t+1)♯{2}^l",
        hypotheses: "s ≥ 2, t ≥ 1",
        params: &[(S, Span(2, 3)), (T, Span(1, 3)), (L, Span(0, 1)), (M, Span(0, 2))],
    },
    IdentitySpec {
        name: "lemma_fmpre2",
        kind: Numeric,
        statement: "Σ_{m1+m2=m} (s+m1) hast shifts of X − Σ_{m1+m2=m−1} (s+m1+1) hast shifts of X = 𝒪_m((s) hast X), X = K and X = K†",
        hypotheses: "s, t ≥ 1, m ≥ 1",
        params: &[(S, Span(1, 3)), (T, Span(1, 3)), (L, Span(0, 1)), (M, Span(1, 2))],
    },
    IdentitySpec {
        name: "lemma_fm",
        kind: Numeric,
        statement: "F_{m,l}(s−1;(t+1)) − F_{m−1,l}(s;(t+1)) = −𝒪_m((s−1) hast K) + 𝒪_m((s−1) hast K†)",
        hypotheses: "s ≥ 3, t ≥ 1, m ≥ 1",
        params: &[(S, Span(3, 4)), (T, Span(1, 3)), (L, Span(0, 1)), (M, Span(1, 2))],
    },
    IdentitySpec {
        name: "lemma_oooo",
        kind: Numeric,
        statement: "𝒪_m((s)♯((t)♯{2}^l)†) − 𝒪_m((s−1) hast ((t+1)♯{2}^l)†) is symmetric in s and t",
        hypotheses: "s, t ≥ 3",
        params: &[(S, Span(3, 4)), (T, Span(3, 4)), (L, Span(0, 1)), (M, Span(0, 1))],
    },
    IdentitySpec {
        name: "lemma_dddd",
        kind: Numeric,
        statement: "D_{m−1,l}(s,t) = D_{m,l}(s−1,t) + D_{m,l}(s,t−1)",
        hypotheses: "s, t ≥ 3, m ≥ 1",
        params: &[(S, Span(3, 4)), (T, Span(3, 4)), (L, Span(0, 1)), (M, Span(1, 2))],
    },
    IdentitySpec {
        name: "sha_expansion_oooo",
        kind: Exact,
        statement: "termwise expansions of (s)♯((t)♯{2}^l)† and (s−1) hast ((t+1)♯{2}^l)†, and their regrouped difference",
        hypotheses: "s, t ≥ 2, l ≥ 1",
        params: &[(S, Span(2, 4)), (T, Span(2, 4)), (L, Span(1, 3))],
    },
    IdentitySpec {
        name: "hast_symmetry",
        kind: Exact,
        statement: "(s−1) hast ((t+1)♯{2}^l) = (s+t)♯{2}^l + (s+1)♯(t+1)♯{2}^{l−1} = (t−1) hast ((s+1)♯{2}^l)",
        hypotheses: "s, t ≥ 2",
        params: &[(S, Span(2, 4)), (T, Span(2, 4)), (L, Span(0, 3))],
    },
    IdentitySpec {
        name: "add1",
        kind: Exact,
        statement: "G_{p,q} = H_{p,q}",
        hypotheses: "s ≥ 2, l ≥ 1, 1 ≤ p, q ≤ l+1",
        params: &[(S, Span(2, 4)), (L, Span(1, 3)), (M, Span(0, 3)), (P, DefaultValues::Positions), (Q, DefaultValues::Positions)],
    },
    IdentitySpec {
        name: "add2",
        kind: Exact,
        statement: "I_{p,q} = J_{p,q}, and for p = q the three partial sums g1, g2, g3",
        hypotheses: "s ≥ 2, l ≥ 1, 1 ≤ p, q ≤ l+1",
        params: &[(S, Span(2, 4)), (L, Span(1, 3)), (M, Span(0, 3)), (P, DefaultValues::Positions), (Q, DefaultValues::Positions)],
    },
    IdentitySpec {
        name: "abc_decomposition",
        kind: Numeric,
        statement: "F_{m,l}(s;(3)) − F_{m,l}(2;(s+1)) = A + B + C, with the exact rewritings of A and B + C",
        hypotheses: "s ≥ 2, l ≥ 0 (exact rewritings through G, H, I, J need l ≥ 1)",
        params: &[(S, Span(3, 4)), (L, Span(1, 2)), (M, Span(0, 1))],
    },
];

/// Every registered identity, in registry order.
pub fn list_identities() -> Vec<IdentitySpec> {
    REGISTRY.to_vec()
}

pub fn find_identity(name: &str) -> Option<&'static IdentitySpec> {
    REGISTRY.iter().find(|s| s.name == name)
}
