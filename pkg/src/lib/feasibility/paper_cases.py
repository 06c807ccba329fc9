"""
Worked numbers of the feasibility analysis, recomputed from first principles.

Each case rebuilds its configuration from the constants active in the current
context, so ``override_constants`` changes every row.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

from src.lib.feasibility.delocalization import (
    eta_required,
    ground_state_size_of,
    required_delocalization,
)
from src.lib.feasibility.solver import solve_bound, with_unknown
from src.lib.quantities.constants import get_constants
from src.lib.quantities.derived import (
    atom_count,
    thermal_wavelength_gas,
    thermal_wavelength_photon,
)
from src.lib.rates.decoherence import coefficient_table
from src.models.budget_model import ChannelId
from src.models.experiment_model import (
    Body,
    Environment,
    ExperimentConfig,
    Oscillator,
    PairGeometry,
    Protocol,
    frequency_noise,
    position_noise,
)
from src.models.feasibility_model import Unknown, ValidationReport, ValidationRow
from src.utils.error_utils import GraventError
from src.utils.logging_utils import log_event

TWO_PI = 2 * math.pi


def silica_nanosphere(**environment: float) -> ExperimentConfig:
    """75 nm silica spheres at alpha = 2 in a 1 K, 1e-15 Pa cryostat."""
    return ExperimentConfig(
        body=Body(radius=75e-9, density=2e3),
        geometry=PairGeometry(alpha=2.0),
        environment=Environment(**{"pressure": 1e-15, "temperature": 1.0, **environment}),
    )


def lead_sphere(**environment: float) -> ExperimentConfig:
    """Planck-mass-scale lead spheres, R = 70 um."""
    return ExperimentConfig(
        body=Body(radius=70e-6, density=1e4),
        geometry=PairGeometry(alpha=2.0),
        environment=Environment(**{"pressure": 1e-15, "temperature": 1.0, **environment}),
    )


def silica_oscillator() -> ExperimentConfig:
    """Trapped silica spheres at 100 kHz with room for realistic trap noise."""
    omega0 = TWO_PI * 1e5
    return ExperimentConfig(
        body=Body(radius=75e-9, density=2e3, temp_internal=4.0),
        geometry=PairGeometry(alpha=2.0),
        environment=Environment(
            pressure=1e-6,
            temperature=40.0,
            pos_noise=position_noise(1e-15, omega0),
            freq_noise=frequency_noise(1e-3, 2 * omega0),
        ),
        oscillator=Oscillator(omega0=omega0, gamma=1e-3, nbar=0.5),
        protocol=Protocol.COUPLED_OSCILLATORS,
    )


def lead_oscillator() -> ExperimentConfig:
    return ExperimentConfig(
        body=Body(radius=70e-6, density=1e4, temp_internal=8.0),
        geometry=PairGeometry(alpha=2.0),
        environment=Environment(pressure=1e-15, temperature=6.0),
        oscillator=Oscillator(omega0=TWO_PI * 1e3, gamma=1e-5, nbar=0.5),
        protocol=Protocol.COUPLED_OSCILLATORS,
    )


def gold_torsion(temperature: float = 2.8, pressure: float = 1e-15) -> ExperimentConfig:
    """1 mm gold spheres on a 10 mHz torsion pendulum."""
    return ExperimentConfig(
        body=Body(radius=1e-3, density=2e4),
        geometry=PairGeometry(alpha=2.0),
        environment=Environment(pressure=pressure, temperature=temperature),
        oscillator=Oscillator(omega0=TWO_PI * 1e-2, nbar=0.5),
        protocol=Protocol.COUPLED_OSCILLATORS,
    )


def mirror(temperature: float = 0.4) -> ExperimentConfig:
    """10 cm glass test masses suspended at 100 Hz."""
    return ExperimentConfig(
        body=Body(radius=0.1, density=2e3),
        geometry=PairGeometry(alpha=2.0),
        environment=Environment(pressure=1e-15, temperature=temperature),
        oscillator=Oscillator(omega0=TWO_PI * 1e2),
        protocol=Protocol.COUPLED_OSCILLATORS,
    )


GAS = [ChannelId.GAS_SCATTERING]
GAS_AND_OCCUPATION = [ChannelId.GAS_SCATTERING, ChannelId.THERMAL_OCCUPATION]


def _bound(config: ExperimentConfig, unknown: Unknown, channel: ChannelId) -> float:
    return solve_bound(config, unknown, [channel]).threshold


def _temperature_bound(
    config: ExperimentConfig, unknown: Unknown, channel: ChannelId, delta_x: float
) -> float:
    # Blackbody rates scale like the entanglement rate, so any dx > 0 gives the same bound
    return _bound(with_unknown(config, Unknown.DELTA_X, delta_x), unknown, channel)


def _delta_x_min(config: ExperimentConfig, channels=None) -> float:
    result = required_delocalization(config, channels)
    if result.delta_x_min is None:
        raise GraventError("no channel bounds delta_x from below")
    return result.delta_x_min


def _gold_delta_x() -> float:
    return _delta_x_min(gold_torsion(), GAS_AND_OCCUPATION)


def _silica_oscillator_pressure() -> float:
    return _bound(
        _at_delta_x_min(silica_oscillator()), Unknown.PRESSURE, ChannelId.GAS_SCATTERING
    )


def _lead_oscillator_eta() -> float:
    config = lead_oscillator()
    return eta_required(config, _delta_x_min(config))


def _gold_pressure() -> float:
    config = with_unknown(gold_torsion(temperature=1.0), Unknown.DELTA_X, 900e-15)
    return _bound(config, Unknown.PRESSURE, ChannelId.GAS_SCATTERING)


def _gold_gamma() -> float:
    config = with_unknown(gold_torsion(), Unknown.DELTA_X, 2e-9)
    return _bound(config, Unknown.GAMMA, ChannelId.THERMAL_DISSIPATION)


def _at_delta_x_min(config: ExperimentConfig) -> ExperimentConfig:
    return with_unknown(config, Unknown.DELTA_X, _delta_x_min(config))


def _freq_noise_asd(config: ExperimentConfig) -> float:
    # Frequency noise is flat, so the PSD amplitude is S_omega(2 omega0)
    return math.sqrt(_bound(config, Unknown.FREQ_NOISE_AMP, ChannelId.FREQUENCY_NOISE))


def _gold_freq_noise() -> float:
    return _freq_noise_asd(with_unknown(gold_torsion(), Unknown.DELTA_X, 2e-9))


def _lead_oscillator_gamma() -> float:
    return _bound(
        _at_delta_x_min(lead_oscillator()), Unknown.GAMMA, ChannelId.THERMAL_DISSIPATION
    )


def _atom_count() -> float:
    # Silicon mass whose entanglement rate reaches 0.1 / s at d = 1 um, dx = 100 nm
    k = get_constants()
    rate, d, dx = 0.1, 1e-6, 100e-9
    m = math.sqrt(rate * d**3 * k.hbar / (k.G * dx * dx))
    return atom_count(m)


@dataclass(frozen=True)
class PaperCase:
    case_id: str
    quantity: str
    unit: str
    paper_value: float
    compute: Callable[[], float]
    tolerance_factor: float = 2.0
    assumptions: str = ""


PAPER_CASES: tuple[PaperCase, ...] = (
    PaperCase("coeff.bb_emission", "emission/absorption prefactor", "m^-5 s^-1 K^-6", 5e25,
              lambda: coefficient_table()["bb_emission"]),
    PaperCase("coeff.bb_scatter", "scattering prefactor", "m^-8 s^-1 K^-9", 5e36,
              lambda: coefficient_table()["bb_scatter"], 3.0),
    PaperCase("coeff.gas", "gas prefactor", "m^-2 s^-1 Pa^-1", 2e26,
              lambda: coefficient_table()["gas"], 1.1, "H2 at 1 K"),
    PaperCase("gold.delta_x_2nm", "delta_x_min", "m", 2e-9, _gold_delta_x, 2.0,
              "p = 1e-15 Pa, T_e = 2.8 K; gas and thermal occupation"),
    PaperCase("gold.delta_x_900fm", "delta_x_min", "m", 900e-15,
              lambda: _bound(gold_torsion(), Unknown.DELTA_X, ChannelId.THERMAL_OCCUPATION),
              2.0, "nbar = 0.5; thermal occupation only"),
    PaperCase("gold.eta", "eta", "", 3e5,
              lambda: eta_required(gold_torsion(), _gold_delta_x()), 2.0,
              "dx_min from the 2 nm case"),
    PaperCase("gold.freq_noise", "sqrt S_omega max", "Hz^-1/2", 1e4,
              _gold_freq_noise, 2.0, "dx = 2 nm, T_e = 2.8 K; frequency noise"),
    PaperCase("gold.gamma", "gamma_max", "s^-1", 3e-8, _gold_gamma, 2.0,
              "dx = 2 nm, T_e = 2.8 K; thermal dissipation"),
    PaperCase("gold.pressure", "pressure_max", "Pa", 1e-22, _gold_pressure, 3.0,
              "dx = 900 fm, T_e = 1 K"),
    PaperCase("gold.temp_environment", "T_e_max", "K", 2.8,
              lambda: _temperature_bound(
                  gold_torsion(), Unknown.TEMP_ENVIRONMENT, ChannelId.BLACKBODY_SCATTER, 2e-9
              )),
    PaperCase("gold.temp_internal", "T_i_max", "K", 10.0,
              lambda: _temperature_bound(
                  gold_torsion(), Unknown.TEMP_INTERNAL, ChannelId.BLACKBODY_EMISSION, 2e-9
              )),
    PaperCase("lead.delta_x", "delta_x_min", "m", 12e-9,
              lambda: _bound(lead_sphere(), Unknown.DELTA_X, ChannelId.GAS_SCATTERING),
              2.0, "alpha = 2, p = 1e-15 Pa, T = 1 K"),
    PaperCase("lead.osc.delta_x", "delta_x_min", "m", 30e-9,
              lambda: _delta_x_min(lead_oscillator()), 2.0,
              "1 kHz, nbar = 0.5, T_e = 6 K, T_i = 8 K"),
    PaperCase("lead.osc.eta", "eta", "", 1e7, _lead_oscillator_eta, 3.0),
    PaperCase("lead.osc.freq_noise", "sqrt S_omega max", "Hz^-1/2", 1e-2,
              lambda: _freq_noise_asd(_at_delta_x_min(lead_oscillator())), 3.0,
              "at dx_min of the oscillator case"),
    PaperCase("lead.osc.gamma", "gamma_max", "s^-1", 1e-5, _lead_oscillator_gamma, 3.0,
              "at dx_min, T_e = 6 K; thermal dissipation"),
    PaperCase("lead.temp_emission", "T_i_max", "K", 8.0,
              lambda: _temperature_bound(
                  lead_sphere(), Unknown.TEMP_INTERNAL, ChannelId.BLACKBODY_EMISSION, 12e-9
              )),
    PaperCase("lead.temp_scatter", "T_e_max", "K", 6.0,
              lambda: _temperature_bound(
                  lead_sphere(), Unknown.TEMP_ENVIRONMENT, ChannelId.BLACKBODY_SCATTER, 12e-9
              )),
    PaperCase("mirror.delta_x", "delta_x_min", "m", 1.2e-9,
              lambda: _bound(mirror(), Unknown.DELTA_X, ChannelId.GAS_SCATTERING),
              2.0, "alpha not stated, 2 assumed; gas only"),
    PaperCase("mirror.eta", "eta", "", 1e10,
              lambda: eta_required(mirror(), 1.2e-9), 3.0, "dx = 1.2 nm"),
    PaperCase("mirror.glass_300mK", "T_e_max", "K", 0.3,
              lambda: _temperature_bound(
                  mirror(), Unknown.TEMP_ENVIRONMENT, ChannelId.BLACKBODY_SCATTER, 1.2e-9
              )),
    PaperCase("mirror.temp_environment", "T_e_max", "K", 0.4,
              lambda: _temperature_bound(
                  mirror(), Unknown.TEMP_ENVIRONMENT, ChannelId.BLACKBODY_SCATTER, 1.2e-9
              )),
    PaperCase("mirror.temp_internal", "T_i_max", "K", 5.0,
              lambda: _temperature_bound(
                  mirror(), Unknown.TEMP_INTERNAL, ChannelId.BLACKBODY_EMISSION, 1.2e-9
              )),
    PaperCase("silica.atom_count", "silicon atoms", "", 1e11, _atom_count, 2.0,
              "rate 0.1 / s at d = 1 um, dx = 100 nm"),
    PaperCase("silica.delta_x", "delta_x_min", "m", 2e-6,
              lambda: _bound(silica_nanosphere(), Unknown.DELTA_X, ChannelId.GAS_SCATTERING),
              2.0, "alpha = 2, p = 1e-15 Pa, T = 1 K"),
    PaperCase("silica.osc.delta_x", "delta_x_min", "m", 4e-2,
              lambda: _delta_x_min(silica_oscillator()), 2.0,
              "100 kHz, nbar = 0.5, p = 1e-6 Pa; absorption at 40 K fails for any dx"),
    PaperCase("silica.osc.eta_2um", "eta", "", 6e5,
              lambda: eta_required(silica_oscillator(), 2e-6), 3.0,
              "dx = 2 um; sigma0 = sqrt(hbar / m omega0)"),
    PaperCase("silica.osc.freq_noise", "sqrt S_omega max", "Hz^-1/2", 1e-3,
              lambda: _freq_noise_asd(_at_delta_x_min(silica_oscillator())), 3.0,
              "at dx_min of the oscillator case"),
    PaperCase("silica.osc.pressure", "pressure_max", "Pa", 1e-6,
              _silica_oscillator_pressure, 2.0, "at dx_min of the oscillator case"),
    PaperCase("silica.osc.sigma0", "sigma0", "m", 3e-12,
              lambda: ground_state_size_of(silica_oscillator()), 3.0,
              "4 R^3 rho mass at 100 kHz; sigma0 = sqrt(hbar / m omega0)"),
    PaperCase("silica.temp_environment", "T_e_max", "K", 40.0,
              lambda: _temperature_bound(
                  silica_nanosphere(), Unknown.TEMP_ENVIRONMENT, ChannelId.BLACKBODY_SCATTER, 2e-6
              )),
    PaperCase("silica.temp_internal", "T_i_max", "K", 5.0,
              lambda: _temperature_bound(
                  silica_nanosphere(), Unknown.TEMP_INTERNAL, ChannelId.BLACKBODY_EMISSION, 2e-6
              )),
    PaperCase("wavelength.gas", "lambda_th H2 at 1 K", "m", 1e-9,
              lambda: thermal_wavelength_gas(1.0, get_constants().m_H2)),
    PaperCase("wavelength.photon", "lambda_th photon at 1 K", "m", 5e-3,
              lambda: thermal_wavelength_photon(1.0)),
)


def _run_case(case: PaperCase) -> ValidationRow:
    assumptions = case.assumptions
    try:
        computed = case.compute()
    except GraventError as exc:
        computed = 0.0
        assumptions = f"{assumptions}; failed: {exc}" if assumptions else f"failed: {exc}"

    row = ValidationRow(
        case_id=case.case_id,
        quantity=case.quantity,
        unit=case.unit,
        paper_value=case.paper_value,
        computed_value=computed,
        tolerance_factor=case.tolerance_factor,
        assumptions=assumptions,
    )
    if not row.passed:
        log_event(
            "validation_row_failed",
            logging.WARNING,
            area="validation",
            case_id=row.case_id,
            paper_value=row.paper_value,
            computed_value=row.computed_value,
        )
    return row


def validate_paper_examples() -> list[ValidationRow]:
    """Recompute every worked number, sorted by case id."""
    rows = [_run_case(case) for case in PAPER_CASES]
    return sorted(rows, key=lambda row: row.case_id)


def validation_report() -> ValidationReport:
    return ValidationReport(rows=validate_paper_examples())


# python -m src.lib.feasibility.paper_cases
if __name__ == "__main__":
    for row in validate_paper_examples():
        flag = "ok  " if row.passed else "FAIL"
        print(f"{flag} {row.case_id:<26} {row.paper_value:>10.3g} {row.computed_value:>10.3g}")
