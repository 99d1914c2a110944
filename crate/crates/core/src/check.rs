use serde::{Deserialize, Serialize};

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    /// Number of individual cases compared.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn passed(name: &str, cases: usize) -> Self {
        CheckReport {
            name: name.into(),
            pass: true,
            cases,
            failure: None,
        }
    }

    pub fn failed(name: &str, cases: usize, failure: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            pass: false,
            cases,
            failure: Some(failure.into()),
        }
    }

    /// `Ok(self)` when passing, otherwise a [`crate::Error::CheckFailed`].
    pub fn into_result(self) -> crate::Result<Self> {
        match self.pass {
            true => Ok(self),
            false => Err(crate::Error::CheckFailed(format!(
                "{}: {}",
                self.name,
                self.failure.unwrap_or_default()
            ))),
        }
    }
}
