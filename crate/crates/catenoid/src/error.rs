use thiserror::Error;

/// Errors shared by all solver modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring data must be positive and finite: r1 = {r1}, r2 = {r2}, d = {d}")]
    InvalidRings { r1: f64, r2: f64, d: f64 },

    #[error("degenerate input: need rho > |xi|, got rho = {rho}, xi = {xi}")]
    DegenerateInput { rho: f64, xi: f64 },

    #[error("invalid bracket [{lo}, {hi}]: f does not change sign (f_lo = {f_lo:e}, f_hi = {f_hi:e})")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("grid needs at least 16 interior points and lo < hi, got n = {n} on [{lo}, {hi}]")]
    InvalidGrid { n: usize, lo: f64, hi: f64 },

    #[error("grid too coarse: {requested} modes requested on {available} interior points")]
    GridTooCoarse { requested: usize, available: usize },

    #[error("inverse iteration did not converge within {0} steps")]
    NoConvergence(usize),

    #[error("w = {w} does not solve the boundary system: cosh(b) residual {residual:e}")]
    InconsistentRoot { w: f64, residual: f64 },

    #[error("w_c = {w_c} lies below the b = 0 critical width w0 = {w0}")]
    OutOfRange { w_c: f64, w0: f64 },

    #[error("(b, w) = ({b}, {w}) is off the critical curve: residual {residual:e}")]
    NotCritical { b: f64, w: f64, residual: f64 },

    #[error("w = {w} is not an inner catenoid: critical half-width for b = {b} is {w_c}")]
    NotInner { b: f64, w: f64, w_c: f64 },

    #[error("no boundary-determinant root in (0, {k_hi}] for (b, w) = ({b}, {w})")]
    NoRoot { b: f64, w: f64, k_hi: f64 },

    #[error("catenoid area forms disagree by {spread:e} relative")]
    FormInconsistency { spread: f64 },

    #[error("branch pair mismatch: area-gap forms differ by {diff:e} relative")]
    Mismatch { diff: f64 },

    #[error("bracket growth exceeded {limit:e} without a sign change")]
    BracketGrowth { limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
