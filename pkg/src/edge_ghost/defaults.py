import math

# Scan geometry
SCAN_GRID = 128
SCAN_DISK_RADIUS = 40
FILTER_SIZE = 10

# Bell geometry
BELL_GRID = 160
BELL_DISK_RADIUS = 60
BELL_RADIAL_PX = 8
BELL_AZIMUTHAL_DEG = 3.0
BELL_AZIMUTHAL_SAMPLES = 3
BELL_THETA_A = (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)
BELL_SETTINGS = (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8)

# Monte Carlo
MC_REALIZATIONS = 10_000
MC_BATCH = 4096

# Spectrum
SPECTRUM_L_MAX = 5

# Speckle check
SPECKLE_CHECK_GRID = 64
SPECKLE_CHECK_SAMPLES = 100_000

# Azimuthal spectra of windows with radius >= 32 px stay within this of the continuous limit
DISCRETIZATION_TOLERANCE = 0.02
DISCRETIZATION_MIN_RADIUS = 32

# Detector pixel pitch, recorded in resolved configs only
DETECTOR_PITCH_UM = 8.3

# Half-width of a z-score still counted as agreement
SIGMA_TOLERANCE = 5.0
