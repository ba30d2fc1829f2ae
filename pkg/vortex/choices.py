from django.db import models


class PointLocation(models.TextChoices):
    INSIDE = "inside", "Inside"
    ON_BOUNDARY = "on-boundary", "On boundary"
    OUTSIDE = "outside", "Outside"


class NerveCase(models.TextChoices):
    VERTEX = "vertex", "Single vertex"
    EDGE = "edge", "Single edge"
    TRIANGLE = "triangle", "Single filled triangle"
    CYCLE = "cycle", "Single path-connected cycle"
    NESTED_PAIR = "nested-pair", "Nested pair of filled cycles"
    DECOMPOSITION = "decomposition", "Filled cycles with a common part and attached edges"


class BettiView(models.TextChoices):
    COMPLEX = "complex", "Plain complex"
    SHAPE = "shape", "Shape"
    VORTEX = "vortex", "Vortex"
    VNRV = "vnrv", "Vortex nerve"


class GenerateKind(models.TextChoices):
    RANDOM_PLANAR = "random-planar", "Random planar complex"
    NESTED_CYCLES = "nested-cycles", "Nested cycles (vortex nerve)"
    DISK_FAMILY = "disk-family", "Family of closed disks"


class ClaimStatus(models.TextChoices):
    PASS = "pass", "Pass"
    FAIL = "fail", "Fail"
