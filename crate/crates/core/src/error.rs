use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid strengths: {0}")]
    InvalidStrengths(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("self-match for player `{0}`")]
    SelfMatch(String),

    #[error("negative or non-finite count {count} for pair ({i}, {j})")]
    NegativeCount { i: String, j: String, count: f64 },

    #[error("invalid solver settings: {0}")]
    InvalidSpec(String),

    #[error("{}", not_connected_message(.components))]
    NotStronglyConnected { components: Vec<Vec<String>> },

    #[error("player `{player}` (index {index}) degenerated: {reason}")]
    DegenerateStrength {
        index: usize,
        player: String,
        reason: String,
    },

    #[error("tie parameter degenerated: {0}")]
    DegenerateNu(String),

    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("no comparisons recorded; maximum likelihood is undefined")]
    NoComparisons,

    #[error("estimate is not converged: {0}")]
    NotConverged(String),

    #[error("exceeded {0} sweeps without convergence")]
    MaxSweepsExceeded(usize),

    #[error("no strongly connected tournament after {0} redraws")]
    RedrawLimitExceeded(usize),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("{path}:{line}: {source}")]
    Located {
        path: String,
        line: u64,
        source: Box<Error>,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

fn not_connected_message(components: &[Vec<String>]) -> String {
    const SHOWN: usize = 8;
    let mut msg = format!(
        "interaction network is not strongly connected ({} components):",
        components.len()
    );
    for comp in components.iter().take(SHOWN) {
        let head: Vec<&str> = comp.iter().take(6).map(String::as_str).collect();
        let more = if comp.len() > 6 {
            format!(", ... ({} players)", comp.len())
        } else {
            String::new()
        };
        msg.push_str(&format!(" {{{}{}}}", head.join(", "), more));
    }
    if components.len() > SHOWN {
        msg.push_str(&format!(" ... and {} more", components.len() - SHOWN));
    }
    msg.push_str("; the maximum-likelihood estimate does not exist (use `--mode map`, or `scc --restrict` to keep the largest component)");
    msg
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
