"""fractallab: exact fractal measures, escape-time and Newton fractals, lattice
verification of the dragon curve, and watertight 3D-printable extrusions.

Submodules are independent; import what you need:

    rationals   exact geometric series, Bernoulli's inequality, ternary digits
    complexes   complex k-th roots and a simultaneous polynomial root finder
    curves      dragon / Koch / snowflake / carpet / Cantor generators + measures
    dragonlab   edge-multiset checks: non-overlap and four-copy plane filling
    mandel      orbit engine, boundary polynomials, grayscale renders
    newtonlab   Heron iteration, basin classification, knot trees, color renders
    raster      PGM/PPM/SVG/DOT emitters
    meshforge   voxel extrusion of dragon iterations and binary STL output
    cli         the `fractalctl` command-line front end
    service     the HTTP render/orbit/knot service
"""

__version__ = "0.1.0"
