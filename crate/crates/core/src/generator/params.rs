use serde::{Deserialize, Serialize};

use super::GenError;

/// Inputs of the random repository generator.
///
/// Axiom counts are per graph: the `global_*` counts go to the global graph,
/// the `local_*` counts to every module. `n_eval_axioms` and
/// `n_propagated_individuals` are per context as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub n_contexts: usize,
    pub n_classes: usize,
    pub n_roles: usize,
    pub n_individuals: usize,
    pub global_tbox: usize,
    pub global_rbox: usize,
    pub global_abox: usize,
    pub local_tbox: usize,
    pub local_rbox: usize,
    pub local_abox: usize,
    #[serde(default)]
    pub n_eval_axioms: usize,
    #[serde(default)]
    pub n_propagated_individuals: usize,
    #[serde(default)]
    pub seed: u64,
}

impl GenParams {
    /// A configuration shaped like the scalability suite: `scale` classes and
    /// roles, twice as many individuals, and TBox/RBox/ABox sizes of
    /// `scale`, `scale / 2` and `2 * scale` in every graph.
    pub fn scaled(n_contexts: usize, scale: usize) -> Self {
        GenParams {
            n_contexts,
            n_classes: scale,
            n_roles: scale,
            n_individuals: 2 * scale,
            global_tbox: scale,
            global_rbox: scale / 2,
            global_abox: 2 * scale,
            local_tbox: scale,
            local_rbox: scale / 2,
            local_abox: 2 * scale,
            n_eval_axioms: 0,
            n_propagated_individuals: 0,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn global_axioms(&self) -> usize {
        self.global_tbox + self.global_rbox + self.global_abox
    }

    pub fn local_axioms(&self) -> usize {
        self.local_tbox + self.local_rbox + self.local_abox
    }

    /// Random axioms over all graphs, excluding eval axioms and propagated
    /// individuals.
    pub fn total_axioms(&self) -> usize {
        self.global_axioms() + self.n_contexts * self.local_axioms()
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let positive = [
            ("n_contexts", self.n_contexts),
            ("n_classes", self.n_classes),
            ("n_roles", self.n_roles),
            ("n_individuals", self.n_individuals),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(GenError::InvalidParams(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn to_config_string(&self) -> String {
        toml::to_string(self).expect("flat struct serializes")
    }

    pub fn from_config_str(s: &str) -> Result<Self, GenError> {
        let p: GenParams = toml::from_str(s).map_err(|e| GenError::InvalidParams(e.message().to_owned()))?;
        p.validate()?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let p = GenParams::scaled(5, 50).with_seed(42);
        let text = p.to_config_string();
        assert!(text.contains("n_contexts = 5"));
        assert_eq!(GenParams::from_config_str(&text).unwrap(), p);
    }

    #[test]
    fn optional_keys_default_to_zero() {
        let text = "n_contexts = 1\nn_classes = 3\nn_roles = 2\nn_individuals = 4\n\
                    global_tbox = 1\nglobal_rbox = 0\nglobal_abox = 0\n\
                    local_tbox = 0\nlocal_rbox = 0\nlocal_abox = 2\n";
        let p = GenParams::from_config_str(text).unwrap();
        assert_eq!((p.n_eval_axioms, p.seed), (0, 0));
        assert_eq!(p.total_axioms(), 3);
    }

    #[test]
    fn zero_contexts_is_rejected() {
        let mut p = GenParams::scaled(1, 10);
        p.n_contexts = 0;
        assert!(GenParams::from_config_str(&p.to_config_string()).is_err());
    }
}
