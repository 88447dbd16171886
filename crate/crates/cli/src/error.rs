use wcorr::correlation::CorrelationError;
use wcorr::coxeter::CoxeterError;
use wcorr::graph_product::GpError;
use wcorr::graphs::GraphError;
use wcorr::qfock::FockError;

/// Failures that stop a command before it can produce a report. All of them
/// exit with status 2; the message prefix tells them apart.
#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(format!("malformed JSON: {e}"))
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Parse(_) => CliError::Parse(e.to_string()),
            GraphError::TooLarge { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CoxeterError> for CliError {
    fn from(e: CoxeterError) -> Self {
        match e {
            CoxeterError::Graph(g) => g.into(),
            CoxeterError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GpError> for CliError {
    fn from(e: GpError) -> Self {
        match e {
            GpError::Graph(g) => g.into(),
            GpError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CorrelationError> for CliError {
    fn from(e: CorrelationError) -> Self {
        match e {
            CorrelationError::Graph(g) => g.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<FockError> for CliError {
    fn from(e: FockError) -> Self {
        match e {
            FockError::Budget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
