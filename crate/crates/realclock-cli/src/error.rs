use std::path::PathBuf;

/// Runner-level failures, one exit code each:
/// config validation 2, numerical guard 3, I/O 4.
#[derive(Debug)]
pub enum CliError {
    Config(Vec<String>),
    Compute {
        source: realclock::Error,
        context: String,
    },
    Io {
        source: std::io::Error,
        path: PathBuf,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn report(&self) -> String {
        match self {
            CliError::Config(problems) => {
                let mut out = String::from("configuration is invalid:\n");
                for p in problems {
                    out.push_str("  - ");
                    out.push_str(p);
                    out.push('\n');
                }
                out
            }
            CliError::Compute { source, context } => {
                format!("numerical guard tripped in {context}: {source}\n")
            }
            CliError::Io { source, path } => {
                format!("I/O failure at {}: {source}\n", path.display())
            }
        }
    }
}
