"""CSV profiles for plotting: header row, fixed row order, 15 significant digits."""
import logging
from pathlib import Path
from typing import Tuple

import numpy as np

from ...continuum.newton_wigner import Picture, chi_overlap_profile, nw_profile
from ...continuum.quadrature import build_quadrature
from ...core.exceptions import ProfileWriteError
from ...lattice.field_ops import anticommutator_kernel
from ...lattice.grid import build_grid
from ...schemas.continuum import ProfileKind, ProfileRequest
from ...schemas.lattice import LatticeSpec

logger = logging.getLogger(__name__)

HEADERS = {
    ProfileKind.NW_CHI: "chi,re,im,abs",
    ProfileKind.NW_X: "x,re,im,abs",
    ProfileKind.CHI_OVERLAP: "separation,overlap,k0_oracle",
    ProfileKind.ANTICOMMUTATOR_KERNEL: "separation,value",
}


def profile_rows(request: ProfileRequest) -> Tuple[str, np.ndarray]:
    kind = ProfileKind(request.kind)
    reach = request.span * request.hbar / request.mass
    if kind in (ProfileKind.NW_CHI, ProfileKind.NW_X):
        grid = build_quadrature(request.quadrature())
        points = np.linspace(-reach, reach, request.points)
        picture = Picture.CHI if kind == ProfileKind.NW_CHI else Picture.X
        rows = nw_profile(grid, picture, points)
    elif kind == ProfileKind.CHI_OVERLAP:
        grid = build_quadrature(request.quadrature())
        separations = np.linspace(0.1 * request.hbar / request.mass, 10 * reach, request.points)
        rows = chi_overlap_profile(grid, separations)
    else:
        spec = LatticeSpec(
            mode_count=request.mode_count,
            box_length=request.box_length,
            mass=request.mass,
            hbar=request.hbar,
        )
        separations, values = anticommutator_kernel(build_grid(spec))
        rows = np.column_stack([separations, values])
    return HEADERS[kind], rows


def emit_profile(request: ProfileRequest, path) -> Path:
    header, rows = profile_rows(request)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, rows, fmt="%.15g", delimiter=",", header=header, comments="")
    except OSError as exc:
        logger.error(f"Failed writing profile {path}")
        raise ProfileWriteError(path, exc.strerror or exc) from exc
    logger.info(f"Wrote {len(rows)} {request.kind.value} rows to {path}")
    return path
