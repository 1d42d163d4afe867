import math

import numpy as np
import pytest

from holoctf.errors import ContractError, DomainError, OverflowGuardError
from holoctf.fields import ComplexField2D, Grid2D, RealField2D, fft2_forward, nudft_at
from holoctf.forward import (
    AnalyticSampler,
    HologramSampler,
    Model,
    ProjectionPair,
    ctf_data_sampler,
    ctf_transfer,
    fresnel_propagate,
    phantom_fields,
    phantom_spectrum,
    simulate_hologram,
)
from holoctf.phantom import Phantom, disk_phantom, rect_phantom


def _midcell_rect(grid: Grid2D, **amplitudes) -> Phantom:
    """A square whose edges fall halfway between grid nodes."""
    return rect_phantom(0.25 - grid.spacing / 2, **amplitudes)


class TestPhantomFields:
    def test_disk_raster(self, small_grid, phi_disk):
        pair = phantom_fields(phi_disk, small_grid)
        centre = small_grid.n // 2
        assert pair.phi.values[centre, centre] == 1.0
        assert pair.phi.values[0, 0] == 0.0
        assert not pair.mu.values.any()

    def test_needs_support_disc(self, phi_disk):
        with pytest.raises(ContractError):
            phantom_fields(phi_disk, Grid2D(16, 0.5))

    def test_psi(self, small_grid):
        pair = phantom_fields(disk_phantom(0.3, mu=2.0, phi=3.0), small_grid)
        centre = small_grid.n // 2
        assert pair.psi.values[centre, centre] == 2.0 - 3.0j
        assert pair.channel("sin") is pair.phi
        assert pair.channel("cos") is pair.mu

    def test_grid_mismatch(self, small_grid):
        with pytest.raises(ContractError):
            ProjectionPair(RealField2D.zeros(small_grid), RealField2D.zeros(Grid2D(32, 4.0)))


class TestPhantomSpectrum:
    def test_dc(self, phi_disk, phi_rect):
        mu_hat, phi_hat = phantom_spectrum(phi_disk, [[0.0, 0.0]])
        assert phi_hat[0] == pytest.approx(math.pi * 0.09)
        assert mu_hat[0] == 0
        _, phi_hat = phantom_spectrum(phi_rect, [[0.0, 0.0]])
        assert phi_hat[0] == pytest.approx(0.25)

    def test_disk_is_radial(self, phi_disk, rng):
        angles = rng.uniform(0, 2 * np.pi, 20)
        points = 2.3 * np.stack([np.cos(angles), np.sin(angles)], axis=1)
        _, phi_hat = phantom_spectrum(phi_disk, points)
        np.testing.assert_allclose(phi_hat, phi_hat[0], rtol=1e-12)

    def test_shift_is_a_phase(self, rng):
        points = rng.uniform(-5, 5, (30, 2))
        _, centred = phantom_spectrum(disk_phantom(0.2, phi=1.0), points)
        _, shifted = phantom_spectrum(disk_phantom(0.2, phi=1.0, center=(0.1, -0.2)), points)
        np.testing.assert_allclose(np.abs(shifted), np.abs(centred), rtol=1e-12, atol=1e-15)

    def test_matches_direct_transform_of_raster(self, rng):
        grid = Grid2D(1024, 2.0)
        phantom = _midcell_rect(grid, phi=1.0)
        pair = phantom_fields(phantom, grid)
        radius = rng.uniform(0, 6, 40)
        angle = rng.uniform(0, 2 * np.pi, 40)
        points = np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1)
        _, exact = phantom_spectrum(phantom, points)
        np.testing.assert_allclose(nudft_at(pair.phi, points), exact, rtol=1e-3, atol=1e-12)

    def test_rejects_non_finite(self, phi_disk):
        with pytest.raises(ContractError):
            phantom_spectrum(phi_disk, [[np.nan, 0.0]])


class TestTransfer:
    def test_values(self):
        assert ctf_transfer(1.0, np.array([0.0, 0.0]), 2.0, 5.0) == pytest.approx(2.0)
        assert ctf_transfer(2.0, np.array([1.0, 0.0]), 2.0, 5.0) == pytest.approx(5.0)
        assert ctf_transfer(3.0, np.array([0.0, math.sqrt(3.0)]), 2.0, 5.0) == pytest.approx(-2.0)

    @pytest.mark.parametrize("f", [0.0, -1.0])
    def test_rejects_nonpositive_f(self, f):
        with pytest.raises(DomainError):
            ctf_transfer(f, np.zeros(2), 1.0, 1.0)

    def test_bounded_by_channel_norm(self, rng):
        eta = rng.uniform(-10, 10, (100, 2))
        mu_hat = rng.normal(size=100)
        phi_hat = rng.normal(size=100)
        out = ctf_transfer(3.0, eta, mu_hat, phi_hat)
        assert np.all(np.abs(out) <= np.hypot(mu_hat, phi_hat) + 1e-12)


class TestPropagation:
    @pytest.fixture
    def field(self, rng):
        grid = Grid2D(64, 2.0)
        return ComplexField2D(grid, rng.normal(size=(64, 64)) + 1j * rng.normal(size=(64, 64)))

    def test_unitary(self, field):
        assert fresnel_propagate(field, 3.0).norm() == pytest.approx(field.norm(), rel=1e-12)

    def test_negative_f_inverts(self, field):
        back = fresnel_propagate(fresnel_propagate(field, 3.0), -3.0)
        np.testing.assert_allclose(back.values, field.values, atol=1e-12)

    def test_infinite_f_is_identity(self, field):
        np.testing.assert_array_equal(fresnel_propagate(field, math.inf).values, field.values)

    def test_zero_f(self, field):
        with pytest.raises(DomainError):
            fresnel_propagate(field, 0.0)


class TestSimulate:
    @pytest.fixture
    def grid(self):
        return Grid2D(64, 2.0)

    @pytest.mark.parametrize("model", ["linear", "full"])
    def test_empty_object(self, grid, model):
        pair = phantom_fields(Phantom(), grid)
        hologram = simulate_hologram(pair, 3.0, model)
        np.testing.assert_allclose(hologram.intensity.values, 1.0, atol=1e-14)
        assert hologram.model is Model(model)
        assert hologram.f == pytest.approx(3.0)

    def test_linear_spectrum_is_ctf(self, grid):
        pair = phantom_fields(disk_phantom(0.3, mu=0.2, phi=0.5), grid)
        hologram = simulate_hologram(pair, 3.0)
        spectrum = fft2_forward(hologram.data).values
        e1, e2 = grid.freq_mesh()
        eta = np.stack([e1, e2], axis=-1)
        expected = ctf_transfer(3.0, eta, fft2_forward(pair.mu).values, fft2_forward(pair.phi).values)
        np.testing.assert_allclose(spectrum, expected, atol=1e-8 * np.max(np.abs(expected)))

    def test_full_model_is_second_order_close(self, grid):
        def gap(alpha):
            pair = phantom_fields(disk_phantom(0.3, phi=alpha), grid)
            full = simulate_hologram(pair, 3.0, Model.FULL).intensity.values
            linear = simulate_hologram(pair, 3.0, Model.LINEAR).intensity.values
            return np.max(np.abs(full - linear))

        ratio = gap(0.02) / gap(0.01)
        assert 3.5 <= ratio <= 4.5

    def test_data_spectrum_is_hermitian(self, grid, rng):
        pair = phantom_fields(rect_phantom(0.2, mu=0.3, phi=0.7, center=(0.1, -0.05)), grid)
        data = simulate_hologram(pair, 3.0).data
        spectrum = fft2_forward(data).values
        rev = (grid.n - np.arange(grid.n)) % grid.n
        np.testing.assert_allclose(spectrum, np.conj(spectrum[np.ix_(rev, rev)]), atol=1e-13)
        points = rng.uniform(-8, 8, (20, 2))
        np.testing.assert_allclose(nudft_at(data, -points), np.conj(nudft_at(data, points)), atol=1e-12)

    def test_data_norm_bounded_by_object(self, rng):
        grid = Grid2D(64, 4.0)
        for _ in range(100):
            pair = ProjectionPair(RealField2D(grid, rng.normal(size=(64, 64))),
                                  RealField2D(grid, rng.normal(size=(64, 64))))
            data = simulate_hologram(pair, 3.0).data
            assert data.norm() <= pair.psi.norm() * (1 + 1e-12)

    def test_overflow_guard(self, grid):
        pair = phantom_fields(disk_phantom(0.3, phi=6.0), grid)
        simulate_hologram(pair, 3.0, Model.LINEAR)
        with pytest.raises(OverflowGuardError):
            simulate_hologram(pair, 3.0, Model.FULL)

    def test_needs_padding(self, phi_disk):
        pair = phantom_fields(phi_disk, Grid2D(32, 1.5))
        with pytest.raises(ContractError):
            simulate_hologram(pair, 3.0)


class TestSamplers:
    def test_empty_phantom(self, rng):
        sampler = AnalyticSampler(Phantom(), 3.0)
        np.testing.assert_array_equal(sampler(rng.uniform(-4, 4, (10, 2))), 0)

    def test_dc_is_attenuation_mass(self):
        sampler = AnalyticSampler(disk_phantom(0.3, mu=2.0, phi=5.0), 3.0)
        assert sampler(np.zeros(2))[0] == pytest.approx(2.0 * math.pi * 0.09)

    def test_rescaled_analytic(self, phi_disk, rng):
        sampler = AnalyticSampler(phi_disk, 3.0)
        rescaled = sampler.rescaled(1.2)
        assert rescaled.f == pytest.approx(3.0 * 1.44)
        points = rng.uniform(-5, 5, (25, 2))
        np.testing.assert_allclose(rescaled(points), sampler(points / 1.2) / 1.44, rtol=1e-10, atol=1e-14)

    def test_hologram_matches_analytic_on_grid(self):
        grid = Grid2D(256, 2.0)
        phantom = _midcell_rect(grid, phi=1.0)
        hologram = simulate_hologram(phantom_fields(phantom, grid), 3.0)
        e1, e2 = grid.freq_mesh()
        inside = e1 ** 2 + e2 ** 2 <= 4.0
        points = np.stack([e1[inside], e2[inside]], axis=1)
        analytic = AnalyticSampler(phantom, 3.0)(points)
        sampled = HologramSampler(hologram)(points)
        peak = float(np.max(np.abs(analytic)))
        np.testing.assert_allclose(sampled, analytic, atol=3e-3 * peak)

    def test_hologram_sampler_scaling(self):
        grid = Grid2D(64, 4.0)
        hologram = simulate_hologram(phantom_fields(Phantom(), grid), 3.0)
        sampler = HologramSampler(hologram)
        assert sampler.reliable_radius == pytest.approx(4.5)
        rescaled = sampler.rescaled(2.0)
        assert rescaled.f == pytest.approx(12.0)
        assert rescaled.reliable_radius == pytest.approx(9.0)

    def test_factory(self, phi_disk):
        grid = Grid2D(32, 2.0)
        hologram = simulate_hologram(phantom_fields(phi_disk, grid), 3.0)
        assert isinstance(ctf_data_sampler(hologram), HologramSampler)
        assert ctf_data_sampler((phi_disk, 5)).f == 5.0
        assert isinstance(ctf_data_sampler(phi_disk, 3), AnalyticSampler)
        with pytest.raises(DomainError):
            ctf_data_sampler(phi_disk)
        with pytest.raises(ContractError):
            ctf_data_sampler("hologram.raw")
