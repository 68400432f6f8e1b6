use std::fmt;

use serde::Serialize;

/// One named hypothesis and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct Checklist(pub Vec<Hypothesis>);

impl Checklist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, name: &str, holds: bool) -> bool {
        self.0.push(Hypothesis {
            name: name.to_string(),
            holds,
            detail: None,
        });
        holds
    }

    pub fn check_with(&mut self, name: &str, holds: bool, detail: impl Into<String>) -> bool {
        self.0.push(Hypothesis {
            name: name.to_string(),
            holds,
            detail: Some(detail.into()),
        });
        holds
    }

    pub fn all_hold(&self) -> bool {
        self.0.iter().all(|h| h.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Hypothesis> {
        self.0.iter().filter(|h| !h.holds)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hypothesis> {
        self.0.iter()
    }
}

impl fmt::Display for Checklist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self
            .failures()
            .map(|h| match &h.detail {
                Some(d) => format!("{} ({d})", h.name),
                None => h.name.clone(),
            })
            .collect();
        write!(f, "{}", failed.join("; "))
    }
}
