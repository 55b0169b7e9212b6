//! Parameter tables for every subcommand.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Int,
    Rational,
    Real,
    Text,
}

#[derive(Clone, Copy, Debug)]
pub struct Param {
    pub key: &'static str,
    pub kind: Kind,
    pub default: Option<&'static str>,
    pub help: &'static str,
}

const fn p(key: &'static str, kind: Kind, default: Option<&'static str>, help: &'static str) -> Param {
    Param { key, kind, default, help }
}

#[derive(Clone, Copy, Debug)]
pub struct CommandSpec {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [Param],
    /// Whether `--format csv` is supported.
    pub csv: bool,
}

use Kind::*;

const ENTRIES: Param = p("entries", Text, None, "coefficients, e.g. \"1,1,2\" or \"(1,0) (0,1)\"");
const XI: Param = p("xi", Text, Some("bernoulli"), "sign law: bernoulli, boolean, lazy:μ, or v:p,v:p,…");

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec {
        name: "dist",
        about: "Exact law of the signed sum",
        params: &[ENTRIES, XI],
        csv: true,
    },
    CommandSpec {
        name: "rho",
        about: "Concentration probability ρ(A) and a maximizing atom",
        params: &[ENTRIES, XI],
        csv: false,
    },
    CommandSpec {
        name: "ball",
        about: "Largest closed-interval probability of radius R",
        params: &[ENTRIES, XI, p("radius", Rational, Some("1"), "radius R ≥ 0"), p("center", Rational, None, "fixed center instead of the supremum")],
        csv: false,
    },
    CommandSpec {
        name: "ball2d",
        about: "Largest closed-disk probability for planar coefficients",
        params: &[ENTRIES, XI, p("radius", Rational, Some("1"), "radius R ≥ 0"), p("center", Text, None, "fixed center \"x,y\" instead of the supremum")],
        csv: false,
    },
    CommandSpec {
        name: "flat",
        about: "Direction of the line leaving the fewest planar entries far away",
        params: &[ENTRIES, p("angles", Int, Some("3600"), "number of normal directions")],
        csv: false,
    },
    CommandSpec {
        name: "stanley",
        about: "ρ(A₀)·n^{3/2} for the symmetric progression",
        params: &[p("n", Text, Some("3..101:2"), "odd sizes: list \"3,5,7\" or range \"a..b:step\"")],
        csv: true,
    },
    CommandSpec {
        name: "esseen",
        about: "Esséen-type bound on the β-ball probability",
        params: &[ENTRIES, XI, p("beta", Rational, Some("1"), "ball radius β > 0")],
        csv: false,
    },
    CommandSpec {
        name: "fp-bound",
        about: "Finite-field exponential bound and Fourier identity",
        params: &[
            ENTRIES,
            p("p", Int, None, "prime; defaults to the smallest embedding prime"),
            p("mode", Text, Some("strict"), "strict or illustrative"),
            p("target", Int, Some("0"), "value for the Fourier identity"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "levels",
        about: "Level sets S_m and dual sets S*_m over a prime field",
        params: &[
            ENTRIES,
            p("p", Int, None, "prime; defaults to the smallest embedding prime"),
            p("mode", Text, Some("strict"), "strict or illustrative"),
            p("m_max", Int, Some("4"), "largest level"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "rl",
        about: "Additive energy count R_l and the hierarchy ratio",
        params: &[ENTRIES, p("l", Int, Some("2"), "order l ≥ 1")],
        csv: false,
    },
    CommandSpec {
        name: "lcd",
        about: "Least common denominator of a vector or of planar columns",
        params: &[
            ENTRIES,
            p("alpha", Real, Some("0.5"), "α > 0"),
            p("gamma", Real, Some("0.5"), "γ ∈ (0, 1)"),
            p("theta_max", Real, None, "search limit; defaults to √n/γ"),
            p("resolution", Real, None, "grid step for the planar search"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "rv-bound",
        about: "LCD small-ball bound against the exact ball probability",
        params: &[
            ENTRIES,
            XI,
            p("beta", Real, Some("0.5"), "ball radius β"),
            p("alpha", Real, Some("0.5"), "α > 0"),
            p("gamma", Real, Some("0.5"), "γ ∈ (0, 1)"),
            p("constant", Real, Some("2"), "constant C"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "recurrence",
        about: "Measure of the recurrence set against its lemma bound",
        params: &[
            ENTRIES,
            p("t", Real, Some("0.1"), "distance threshold t < α/2"),
            p("z", Real, Some("1"), "dilation z ≥ 1"),
            p("beta", Real, Some("0.5"), "β > 0"),
            p("gamma", Real, Some("0.5"), "γ ∈ (0, 1)"),
            p("alpha", Real, Some("0.5"), "α > 0"),
            p("grid", Int, Some("400001"), "grid points on [−1, 1]"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "gap-fit",
        about: "Small proper GAP containing most of an integer multiset",
        params: &[
            ENTRIES,
            p("epsilon", Rational, Some("0"), "largest excluded fraction"),
            p("max_rank", Int, Some("2"), "rank limit, 1 to 3"),
            p("budget", Int, Some("1000000"), "materialization budget"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "gap-forward",
        about: "Sample a multiset from a proper GAP and report ρ·n^{r/2}·|Q|",
        params: &[
            p("generators", Text, Some("1"), "generator list"),
            p("bounds", Text, Some("5"), "bound list"),
            p("n", Int, Some("20"), "sample size"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "census",
        about: "Count multisets of nonzero integers in [−M, M] by concentration",
        params: &[
            p("n", Int, Some("4"), "multiset size"),
            p("M", Int, Some("4"), "entry bound"),
            p("rho_grid", Text, Some("1/64,1/32,1/16,1/8,1/4,1/2"), "thresholds ρ₀"),
            p("budget", Int, Some("2000000"), "largest number of multisets"),
        ],
        csv: true,
    },
    CommandSpec {
        name: "geo-rho",
        about: "ρ of {1, x, …, xⁿ}",
        params: &[p("x", Text, Some("2"), "rational x, quad:c1,c0 for x² = c1x + c0, or golden"), p("n", Int, Some("8"), "top power")],
        csv: false,
    },
    CommandSpec {
        name: "quad-rho",
        about: "Quadratic concentration ρ_q of a symmetric matrix",
        params: &[p("matrix", Text, None, "rows separated by ';'"), XI],
        csv: false,
    },
    CommandSpec {
        name: "decouple",
        about: "Four-copy decoupling inequality",
        params: &[
            p("matrix", Text, None, "rows separated by ';'"),
            p("u1", Text, None, "1-based indices of the first block"),
            p("x", Rational, Some("0"), "target value"),
            XI,
        ],
        csv: false,
    },
    CommandSpec {
        name: "quad-gen",
        about: "Structured quadratic forms with their predicted floors",
        params: &[
            p("kind", Text, Some("gap"), "gap, lowrank or mixed"),
            p("n", Int, Some("10"), "dimension"),
            p("gap_generators", Text, Some("1"), "generators of the additive GAP"),
            p("gap_bounds", Text, Some("3"), "bounds of the additive GAP"),
            p("k", Text, None, "integer kᵢ; defaults to alternating ±1"),
            p("b", Text, None, "integer bᵢ; defaults to random in [−n, n]"),
            XI,
        ],
        csv: false,
    },
    CommandSpec {
        name: "multi-rho",
        about: "P(p(ξ) = x) for a multilinear polynomial in {0,1} variables",
        params: &[
            p("poly", Text, None, "terms \"coef: i1 i2; …\", 1-based"),
            p("n", Int, None, "number of variables"),
            p("x", Rational, Some("0"), "target value"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "parity-cor",
        about: "Correlation of a polynomial with parity",
        params: &[p("poly", Text, None, "terms \"coef: i1 i2; …\", 1-based"), p("n", Int, None, "number of variables")],
        csv: false,
    },
    CommandSpec {
        name: "singularity",
        about: "Probability that a random sign matrix is singular",
        params: &[
            p("n", Int, None, "matrix size"),
            p("kind", Text, Some("bernoulli"), "bernoulli or symmetric"),
            p("mode", Text, Some("mc"), "exact or mc"),
            p("trials", Int, Some("100000"), "Monte Carlo trials"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "universal",
        about: "Failure rate of k-universality for random sign vectors",
        params: &[
            p("d", Int, None, "number of vectors"),
            p("n", Int, None, "length"),
            p("k", Int, Some("2"), "pattern size"),
            p("trials", Int, Some("10000"), "Monte Carlo trials"),
        ],
        csv: false,
    },
    CommandSpec {
        name: "lsv",
        about: "Empirical law of √n·σ_min",
        params: &[
            p("n", Int, Some("100"), "matrix size"),
            p("kind", Text, Some("gaussian"), "gaussian, bernoulli or symmetric"),
            p("trials", Int, Some("1000"), "samples"),
        ],
        csv: true,
    },
    CommandSpec {
        name: "edelman",
        about: "Limiting CDF of √n·σ_min",
        params: &[p("t", Text, Some("0.5"), "points, comma separated")],
        csv: false,
    },
    CommandSpec {
        name: "common-roots",
        about: "Probability that two random sign polynomials share a root",
        params: &[p("n", Int, None, "degree"), p("trials", Int, Some("200000"), "Monte Carlo trials")],
        csv: false,
    },
    CommandSpec {
        name: "sweep",
        about: "Run a subcommand over a parameter grid and aggregate CSV rows",
        params: &[
            p("command", Text, None, "subcommand to run per cell"),
            p("grid", Text, Some(""), "\"key=v1,v2;key2=a..b:step\"; first key varies slowest"),
            p("set", Text, Some(""), "fixed parameters \"key=value;…\""),
        ],
        csv: true,
    },
];

/// Keys accepted in config files besides the subcommand parameters.
pub const GLOBAL_KEYS: &[&str] = &["seed", "output", "format", "workers"];

pub fn command(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}
