//! Loading models from files: CCS specifications, Petri nets and explicit
//! LTSCs, chosen by file extension unless given explicitly.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::ccs::{explore_ccs, parse_ccs, CcsError, CcsSpec};
use crate::json::{LoadError, LtsFile};
use crate::lts::Ltsc;
use crate::petri::{explore_net, net_from_json, NetLoadError, PetriError, PetriNet};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Ccs,
    Net,
    Lts,
}

impl ModelKind {
    /// `*.ccs`, `*.net.json`, or any other `*.json` as an explicit LTS.
    pub fn from_path(path: &Path) -> Option<Self> {
        let name = path.file_name()?.to_str()?;
        if name.ends_with(".ccs") {
            Some(ModelKind::Ccs)
        } else if name.ends_with(".net.json") {
            Some(ModelKind::Net)
        } else if name.ends_with(".json") {
            Some(ModelKind::Lts)
        } else {
            None
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "ccs" => Some(ModelKind::Ccs),
            "net" => Some(ModelKind::Net),
            "lts" => Some(ModelKind::Lts),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot tell the model type of {0}; pass it explicitly")]
    UnknownKind(PathBuf),
    #[error(transparent)]
    Ccs(#[from] CcsError),
    #[error(transparent)]
    NetFile(#[from] NetLoadError),
    #[error(transparent)]
    Net(#[from] PetriError),
    #[error(transparent)]
    Lts(#[from] LoadError),
}

/// A parsed, not yet explored model.
#[derive(Clone, Debug)]
pub enum Source {
    Ccs(CcsSpec),
    Net(PetriNet),
    Lts(Ltsc),
}

impl Source {
    pub fn parse(text: &str, kind: ModelKind) -> Result<Self, ModelError> {
        Ok(match kind {
            ModelKind::Ccs => Source::Ccs(parse_ccs(text)?),
            ModelKind::Net => Source::Net(net_from_json(text)?),
            ModelKind::Lts => {
                let file: LtsFile = serde_json::from_str(text).map_err(LoadError::from)?;
                Source::Lts(file.into_ltsc().map_err(LoadError::from)?)
            }
        })
    }

    pub fn read(path: &Path, kind: Option<ModelKind>) -> Result<Self, ModelError> {
        let kind = kind
            .or_else(|| ModelKind::from_path(path))
            .ok_or_else(|| ModelError::UnknownKind(path.to_owned()))?;
        let text = std::fs::read_to_string(path).map_err(|source| ModelError::Io {
            path: path.to_owned(),
            source,
        })?;
        Source::parse(&text, kind)
    }

    /// The state space from the `main` process (CCS), the initial marking
    /// (nets), or the system itself.
    pub fn explore(&self, max_states: usize) -> Result<Ltsc, ModelError> {
        Ok(match self {
            Source::Ccs(spec) => explore_ccs(&spec.process(None)?, &spec.definitions, max_states)?.ltsc,
            Source::Net(net) => explore_net(net, max_states)?.ltsc,
            Source::Lts(l) => l.clone(),
        })
    }
}

/// Reads and explores a model in one go.
pub fn load_model(path: &Path, kind: Option<ModelKind>, max_states: usize) -> Result<Ltsc, ModelError> {
    Source::read(path, kind)?.explore(max_states)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(ModelKind::from_path(Path::new("a/vm.ccs")), Some(ModelKind::Ccs));
        assert_eq!(ModelKind::from_path(Path::new("x.net.json")), Some(ModelKind::Net));
        assert_eq!(ModelKind::from_path(Path::new("beer_D.lts.json")), Some(ModelKind::Lts));
        assert_eq!(ModelKind::from_path(Path::new("notes.txt")), None);
    }

    #[test]
    fn parse_each_kind() {
        let l = Source::parse("VM = c.p.VM; main = VM;", ModelKind::Ccs).unwrap().explore(10).unwrap();
        assert_eq!((l.num_states(), l.num_transitions()), (2, 2));
        let net = r#"{"places": ["p", "q"], "initial": {"p": 1},
            "transitions": [{"name": "t", "label": "a", "pre": {"p": 1}, "post": {"q": 1}}]}"#;
        let l = Source::parse(net, ModelKind::Net).unwrap().explore(10).unwrap();
        assert_eq!((l.num_states(), l.num_transitions()), (2, 1));
        let lts = r#"{"states": ["s"], "initial": "s", "transitions": []}"#;
        assert_eq!(Source::parse(lts, ModelKind::Lts).unwrap().explore(1).unwrap().num_states(), 1);
        assert!(matches!(Source::parse("{", ModelKind::Lts), Err(ModelError::Lts(_))));
        assert!(matches!(
            Source::parse("main = a.0; main = b.0;", ModelKind::Ccs),
            Err(ModelError::Ccs(CcsError::DuplicateDefinition(_)))
        ));
    }
}
