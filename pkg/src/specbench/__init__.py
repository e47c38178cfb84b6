"""specbench: a virtual UV-Vis spectrophotometer for Co/Ni mixtures.

Beer's-law spectral simulation, jump-connection feed-forward nets trained by
backpropagation, an artificial-chemistry hyperparameter reactor, correlation
metrics, and a small prediction service.
"""

from .data import NormalizationParams, Sample, SampleSet, SplitSet, normalize, denormalize, split
from .metrics import CorrelationReport, correlation_report, evaluate_model, pearson
from .modelio import DUAL, FORWARD, TrainedModel
from .network import (
    NetworkTopology,
    TrainingConfig,
    TrainingDivergence,
    TrainingTrace,
    WeightSet,
    forward,
    forward_batch,
    init_network,
    numerical_gradient,
    train,
)
from .reactor import Molecule, ReactorConfig, ReactorResult, collide, evaluate_molecule, run_reactor, wall_collision
from .spectral import (
    BandModel,
    GenerationSpec,
    SpeciesSpectrum,
    WavelengthGrid,
    absorbance_profile,
    generate_dataset,
    load_band_config,
    molar_absorptivity,
)

__version__ = "0.1.0"
