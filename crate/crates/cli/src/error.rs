use thiserror::Error;
use zz_lattice::Error as CoreError;

/// Failure classes with fixed process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input, configuration or I/O. Exit code 1.
    #[error("{0}")]
    Validation(String),
    /// The physics pipeline could not produce a result. Exit code 2.
    #[error("{0}")]
    Physics(String),
    /// A routed circuit failed equivalence or connectivity checks. Exit code 3.
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    pub fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Physics(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    /// `ERROR:<code>:<message>`, the line written to standard error.
    pub fn report_line(&self) -> String {
        format!("ERROR:{}:{}", self.code(), self)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::LabelingAmbiguous { .. }
            | CoreError::EmptyResult(_)
            | CoreError::NotHermitian { .. }
            | CoreError::NoConvergence
            | CoreError::ResonantDrive => CliError::Physics(msg),
            CoreError::Verification(_) => CliError::Verification(msg),
            CoreError::InvalidTruncation(_)
            | CoreError::IndexOutOfRange { .. }
            | CoreError::Config(_)
            | CoreError::Resource(_)
            | CoreError::Capacity { .. }
            | CoreError::Disconnected => CliError::Validation(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(format!("i/o error: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_class() {
        assert_eq!(CliError::from(CoreError::Config("x".into())).code(), 1);
        assert_eq!(CliError::from(CoreError::Disconnected).code(), 1);
        assert_eq!(CliError::from(CoreError::EmptyResult("x".into())).code(), 2);
        assert_eq!(CliError::from(CoreError::LabelingAmbiguous { label: vec![1, 0], overlap: 0.5 }).code(), 2);
        assert_eq!(CliError::from(CoreError::Verification("x".into())).code(), 3);
    }

    #[test]
    fn report_prefix() {
        let line = CliError::Physics("no labels".into()).report_line();
        assert_eq!(line, "ERROR:2:no labels");
    }
}
