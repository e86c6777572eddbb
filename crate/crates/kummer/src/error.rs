use std::fmt;

use crate::spec::ParseError;

/// Errors of the driver. All of them map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum KummerError {
    #[error("{}", ParseErrors(.0))]
    Parse(Vec<ParseError>),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("[{module}] {source}")]
    Engine {
        module: &'static str,
        #[source]
        source: kummer_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl KummerError {
    pub fn engine(module: &'static str) -> impl FnOnce(kummer_core::Error) -> KummerError {
        move |source| KummerError::Engine { module, source }
    }
}

struct ParseErrors<'a>(&'a [ParseError]);

impl fmt::Display for ParseErrors<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
