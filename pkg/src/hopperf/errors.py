"""Exception types. Validation problems subclass ``ValueError``."""


class InvalidPathset(ValueError):
    def __init__(self, region: int, edges, bound: str):
        self.region, self.edges, self.bound = region, tuple(sorted(edges)), bound
        super().__init__(
            f"region {region}: {list(self.edges)} is not a {bound}-pathset"
        )


class InvalidCutset(ValueError):
    def __init__(self, region: int, edges, bound: str):
        self.region, self.edges, self.bound = region, tuple(sorted(edges)), bound
        super().__init__(
            f"region {region}: {list(self.edges)} is not a {bound}-cutset"
        )


class OverlapWithinRegion(ValueError):
    def __init__(self, region: int, first, second):
        self.region = region
        self.first, self.second = tuple(sorted(first)), tuple(sorted(second))
        shared = sorted(set(first) & set(second))
        super().__init__(
            f"region {region}: sets {list(self.first)} and {list(self.second)} share edges {shared}"
        )


class FamilyNotDisjoint(ValueError):
    pass


class OmegaTooLarge(ValueError):
    def __init__(self, size: int, cap: int):
        self.size, self.cap = size, cap
        super().__init__(f"|Omega| = {size} exceeds the cap of {cap}")


class TooManyEdges(ValueError):
    def __init__(self, size: int, cap: int):
        self.size, self.cap = size, cap
        super().__init__(f"m = {size} exceeds the enumeration cap of {cap}")


class ZeroConditional(ArithmeticError):
    """The fixed edges already force the configuration into Z."""
