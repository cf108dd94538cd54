use serde::{Deserialize, Serialize};
use sispace::spectral::GeneratorSpec;
use sispace::{CoeffSeq, Error, GridSpec, Result, SIFunction};

/// Scene file: an expansion `Σ_i Σ_k c^i_k φ_i(· − k)` plus its order and grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub generators: Vec<GeneratorSpec>,
    pub coefficients: Vec<CoeffSeq>,
    pub order: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

impl Scene {
    pub fn from_function(f: &SIFunction, grid: Option<GridSpec>) -> Self {
        Self {
            generators: f.generators().iter().map(GeneratorSpec::from).collect(),
            coefficients: f.coeffs().to_vec(),
            order: f.order(),
            grid,
        }
    }

    pub fn dim(&self) -> Result<usize> {
        self.generators
            .first()
            .map(|g| g.dim)
            .ok_or_else(|| Error::InvalidInput("scene has no generators".into()))
    }

    /// The scene grid, or the default grid for its dimension.
    pub fn grid(&self) -> Result<GridSpec> {
        let g = match self.grid {
            Some(g) => g,
            None => GridSpec::default_for(self.dim()?),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn function(&self) -> Result<SIFunction> {
        let gens = self.generators.iter().map(|g| g.to_generator()).collect::<Result<Vec<_>>>()?;
        SIFunction::new(gens, self.coefficients.clone(), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sispace::Generator;

    #[test]
    fn round_trip_is_identity() {
        let text = r#"{"generators":[{"kind":"bspline","dim":1,"order":2},{"kind":"gaussian","dim":1,"sigma":0.5}],
            "coefficients":[{"dim":1,"entries":[{"k":[-1],"re":0.5,"im":0.0},{"k":[2],"re":1.0,"im":-1.0}]},{"dim":1,"entries":[]}],
            "order":1.5,"grid":{"R":8.0,"h":0.125,"freq_radius":4.0,"K":8}}"#;
        let s: Scene = serde_json::from_str(text).unwrap();
        let again: Scene = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(s, again);
        let f = s.function().unwrap();
        assert_eq!(Scene::from_function(&f, s.grid), s);
    }

    #[test]
    fn default_grid_and_errors() {
        let s = Scene::from_function(&SIFunction::single(Generator::hat(2), 0.0), None);
        assert_eq!(s.grid().unwrap(), GridSpec::default_for(2));
        let bad = Scene { generators: Vec::new(), coefficients: Vec::new(), order: 0.0, grid: None };
        assert!(bad.grid().is_err());
        assert!(serde_json::from_str::<Scene>(r#"{"generators":[],"coefficients":[],"order":0,"extra":1}"#).is_err());
    }
}
