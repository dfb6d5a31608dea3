//! Built-in example instances.

use crate::compat::EpsilonAssignment;
use crate::document::ProblemDocument;
use crate::error::Result;
use crate::choworbit::ProblemInstance;
use crate::lattice::Lattice;
use crate::quiver::Quiver;

pub const DP3_JSON: &str = include_str!("../fixtures/dp3.json");
pub const TRIANGLE_JSON: &str = include_str!("../fixtures/triangle.json");

pub const NAMES: [&str; 2] = ["dp3", "triangle"];

#[derive(Clone, Debug)]
pub struct Fixture {
    pub document: ProblemDocument,
    pub lattice: Lattice,
    pub quiver: Quiver,
    pub epsilons: Option<EpsilonAssignment>,
}

impl Fixture {
    fn load(json: &str) -> Fixture {
        let document = ProblemDocument::from_json(json).expect("fixture parses");
        Fixture {
            lattice: document.lattice().expect("fixture lattice"),
            quiver: document.quiver().expect("fixture quiver"),
            epsilons: document.epsilons().expect("fixture epsilons"),
            document,
        }
    }

    pub fn instance(&self) -> Result<ProblemInstance> {
        ProblemInstance::new(self.lattice.clone(), self.quiver.clone(), self.epsilons.clone())
    }
}

/// The hexagon lattice with the 12-edge quiver on six nodes.
pub fn dp3() -> Fixture {
    Fixture::load(DP3_JSON)
}

/// `N = 3` with a single oriented triangle as both cells.
pub fn triangle() -> Fixture {
    Fixture::load(TRIANGLE_JSON)
}

pub fn by_name(name: &str) -> Option<Fixture> {
    match name {
        "dp3" => Some(dp3()),
        "triangle" => Some(triangle()),
        _ => None,
    }
}

pub fn json_by_name(name: &str) -> Option<&'static str> {
    match name {
        "dp3" => Some(DP3_JSON),
        "triangle" => Some(TRIANGLE_JSON),
        _ => None,
    }
}
