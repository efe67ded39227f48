use crate::model::Diagnostic;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input rejected with {} diagnostic(s)", .0.len())]
    Diagnostics(Vec<Diagnostic>),
    #[error("the augmented background theory is unsatisfiable; every condition set is impossible")]
    UnsatisfiableTheory,
    #[error("more than {cap} explanation atoms derived (raise --max-atoms)")]
    AtomCap { cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
