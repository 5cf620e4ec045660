"""Workspace geometry: convex obstacles, scenes, exact segment collision tests.

Collision semantics are conservative: touching an obstacle boundary counts
as COLLISION. All tests are deterministic closed-form checks (no sampling).
"""

import math

import numpy as np

SPHERE_TOL = 1e-12  # discriminant sign tolerance for segment-sphere


class Box:
    """Axis-aligned box given by per-axis [lo, hi] intervals."""

    def __init__(self, lo, hi):
        self.lo = np.asarray(lo, dtype=float)
        self.hi = np.asarray(hi, dtype=float)
        if self.lo.shape != self.hi.shape or (self.lo > self.hi).any():
            raise ValueError("box needs lo <= hi per axis")

    @property
    def dim(self):
        return self.lo.shape[0]

    def contains(self, point):
        return bool((point >= self.lo).all() and (point <= self.hi).all())

    def intersects_segment(self, a, b):
        # Slab method on the closed box.
        d = b - a
        t0, t1 = 0.0, 1.0
        for lo, hi, o, dd in zip(self.lo, self.hi, a, d):
            if dd == 0.0:
                if o < lo or o > hi:
                    return False
                continue
            ta = (lo - o) / dd
            tb = (hi - o) / dd
            if ta > tb:
                ta, tb = tb, ta
            t0 = max(t0, ta)
            t1 = min(t1, tb)
            if t0 > t1:
                return False
        return True


class Sphere:
    def __init__(self, center, radius):
        self.center = np.asarray(center, dtype=float)
        if radius <= 0:
            raise ValueError("sphere radius must be positive")
        self.radius = float(radius)

    @property
    def dim(self):
        return self.center.shape[0]

    def contains(self, point):
        return float(np.dot(point - self.center, point - self.center)) <= self.radius**2

    def intersects_segment(self, a, b):
        # Roots of |a + t(b-a) - c|^2 = r^2 restricted to t in [0, 1].
        d = b - a
        f = a - self.center
        qa = float(np.dot(d, d))
        if qa == 0.0:
            return self.contains(a)
        qb = 2.0 * float(np.dot(f, d))
        qc = float(np.dot(f, f)) - self.radius**2
        disc = qb * qb - 4.0 * qa * qc
        if disc < -SPHERE_TOL:
            return False
        disc = max(disc, 0.0)
        root = math.sqrt(disc)
        t1 = (-qb - root) / (2.0 * qa)
        t2 = (-qb + root) / (2.0 * qa)
        return t1 <= 1.0 and t2 >= 0.0


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, c):
    """Collinear point c lies on closed segment ab."""
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[
        1
    ] <= max(a[1], b[1])


def segments_intersect(p1, p2, q1, q2):
    """Closed 2D segment intersection, including endpoint/collinear contact."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


class Polygon2D:
    """Simple counterclockwise polygon (2D only)."""

    def __init__(self, vertices):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
            raise ValueError("polygon needs >= 3 two-dimensional vertices")
        self.vertices = verts

    @property
    def dim(self):
        return 2

    def contains(self, point):
        # Ray casting; boundary handled separately by the edge tests.
        x, y = point[0], point[1]
        inside = False
        verts = self.vertices
        n = len(verts)
        for i in range(n):
            x1, y1 = verts[i]
            x2, y2 = verts[(i + 1) % n]
            if (y1 > y) != (y2 > y):
                xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
                if x < xc:
                    inside = not inside
        return inside

    def intersects_segment(self, a, b):
        verts = self.vertices
        n = len(verts)
        for i in range(n):
            if segments_intersect(a, b, verts[i], verts[(i + 1) % n]):
                return True
        return self.contains(a) or self.contains(b)


class Scene:
    """Workspace bounds plus base obstacles and optional toggle obstacles.

    Activating the toggles turns the feasible variant of an environment into
    its infeasible one without changing anything else.
    """

    def __init__(self, bounds, base_obstacles=(), toggle_obstacles=(),
                 toggles_active=False, start=None, goal=None):
        self.bounds = np.asarray(bounds, dtype=float)  # (d, 2) lo/hi rows
        if self.bounds.ndim != 2 or self.bounds.shape[1] != 2:
            raise ValueError("bounds must be (d, 2)")
        self.base_obstacles = list(base_obstacles)
        self.toggle_obstacles = list(toggle_obstacles)
        self.toggles_active = toggles_active
        self.start = None if start is None else np.asarray(start, dtype=float)
        self.goal = None if goal is None else np.asarray(goal, dtype=float)
        for obs in self.base_obstacles + self.toggle_obstacles:
            if obs.dim != self.dim:
                raise ValueError("obstacle dimension mismatch")

    @property
    def dim(self):
        return self.bounds.shape[0]

    def active_obstacles(self):
        if self.toggles_active:
            return self.base_obstacles + self.toggle_obstacles
        return self.base_obstacles

    def with_toggles(self, active):
        return Scene(self.bounds, self.base_obstacles, self.toggle_obstacles,
                     toggles_active=active, start=self.start, goal=self.goal)

    def sample_uniform(self, rng, n):
        lo = self.bounds[:, 0]
        hi = self.bounds[:, 1]
        return lo + rng.random((n, self.dim)) * (hi - lo)


def evaluate_segment(scene, a, b):
    """True when the closed segment [a, b] is collision-free in the scene."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != (scene.dim,) or b.shape != (scene.dim,):
        raise ValueError("configuration dimension does not match scene")
    for obs in scene.active_obstacles():
        if obs.intersects_segment(a, b):
            return False
    return True


def point_free(scene, point):
    point = np.asarray(point, dtype=float)
    return not any(obs.contains(point) for obs in scene.active_obstacles())


# --- scene file format ------------------------------------------------------


def save_scene(scene, path):
    with open(path, "w", encoding="utf-8") as fh:
        flat = " ".join(repr(float(x)) for x in scene.bounds.ravel())
        fh.write(f"bounds {scene.dim} {flat}\n")
        if scene.start is not None:
            fh.write("start " + " ".join(repr(float(x)) for x in scene.start) + "\n")
        if scene.goal is not None:
            fh.write("goal " + " ".join(repr(float(x)) for x in scene.goal) + "\n")
        if scene.toggles_active:
            fh.write("toggles_active\n")
        for toggled, obstacles in (
            (False, scene.base_obstacles),
            (True, scene.toggle_obstacles),
        ):
            prefix = "toggle " if toggled else ""
            for obs in obstacles:
                if isinstance(obs, Polygon2D):
                    coords = " ".join(
                        repr(float(x)) for x in obs.vertices.ravel()
                    )
                    fh.write(f"{prefix}poly {len(obs.vertices)} {coords}\n")
                elif isinstance(obs, Box):
                    coords = " ".join(
                        repr(float(x))
                        for pair in zip(obs.lo, obs.hi)
                        for x in pair
                    )
                    fh.write(f"{prefix}box {coords}\n")
                elif isinstance(obs, Sphere):
                    coords = " ".join(repr(float(x)) for x in obs.center)
                    fh.write(f"{prefix}sphere {coords} {obs.radius!r}\n")
                else:
                    raise TypeError(f"unknown obstacle type: {type(obs)!r}")


def load_scene(path):
    base, toggles = [], []
    bounds = start = goal = None
    toggles_active = False
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            kind = parts[0]
            if kind == "bounds":
                d = int(parts[1])
                vals = [float(x) for x in parts[2 : 2 + 2 * d]]
                bounds = np.asarray(vals).reshape(d, 2)
                continue
            if kind == "start":
                start = [float(x) for x in parts[1:]]
                continue
            if kind == "goal":
                goal = [float(x) for x in parts[1:]]
                continue
            if kind == "toggles_active":
                toggles_active = True
                continue
            target = base
            if kind == "toggle":
                target = toggles
                parts = parts[1:]
                kind = parts[0]
            if kind == "poly":
                k = int(parts[1])
                vals = [float(x) for x in parts[2 : 2 + 2 * k]]
                target.append(Polygon2D(np.asarray(vals).reshape(k, 2)))
            elif kind == "box":
                vals = [float(x) for x in parts[1:]]
                lo = vals[0::2]
                hi = vals[1::2]
                target.append(Box(lo, hi))
            elif kind == "sphere":
                vals = [float(x) for x in parts[1:]]
                target.append(Sphere(vals[:-1], vals[-1]))
            else:
                raise ValueError(f"{path}:{lineno}: unknown scene entry {kind!r}")
    if bounds is None:
        raise ValueError(f"{path}: missing bounds line")
    return Scene(bounds, base, toggles, toggles_active, start=start, goal=goal)


# --- bundled environments ---------------------------------------------------
#
# Four parametric 2D environments with feasible/infeasible variants via
# toggle obstacles. Each toggle set completes a full left-to-right barrier,
# so the infeasible variant is infeasible for any roadmap.


def _passage():
    base = [
        Box([0.45, 0.00], [0.55, 0.40]),
        Box([0.45, 0.60], [0.55, 1.00]),
    ]
    toggles = [Box([0.45, 0.38], [0.55, 0.62])]
    return Scene([[0, 1], [0, 1]], base, toggles,
                 start=[0.08, 0.5], goal=[0.92, 0.5])


def _rooms():
    base = [
        Box([0.30, 0.00], [0.36, 0.70]),   # left wall, door at top
        Box([0.30, 0.80], [0.36, 1.00]),
        Box([0.64, 0.30], [0.70, 1.00]),   # right wall, door at bottom
        Box([0.64, 0.00], [0.70, 0.20]),
        Box([0.36, 0.45], [0.56, 0.55]),   # divider, passable on its right
    ]
    toggles = [
        Box([0.30, 0.68], [0.36, 0.82]),   # close left door
        Box([0.64, 0.18], [0.70, 0.32]),   # close right door
    ]
    return Scene([[0, 1], [0, 1]], base, toggles,
                 start=[0.12, 0.5], goal=[0.88, 0.5])


def _zigzag():
    base = [
        Box([0.20, 0.00], [0.28, 0.75]),
        Box([0.46, 0.25], [0.54, 1.00]),
        Box([0.72, 0.00], [0.80, 0.75]),
    ]
    toggles = [Box([0.46, 0.00], [0.54, 0.27])]
    return Scene([[0, 1], [0, 1]], base, toggles,
                 start=[0.08, 0.15], goal=[0.92, 0.15])


def _clutter():
    base = [
        Sphere([0.30, 0.25], 0.09),
        Sphere([0.68, 0.72], 0.09),
        Box([0.15, 0.60], [0.30, 0.75]),
        Box([0.55, 0.15], [0.70, 0.30]),
        Polygon2D([[0.42, 0.42], [0.58, 0.46], [0.52, 0.62], [0.40, 0.56]]),
        Sphere([0.82, 0.35], 0.07),
        Box([0.10, 0.85], [0.45, 0.95]),
    ]
    # Barrier through the clutter: the two boxes overlap at y=0.5 and span
    # the full height when active.
    toggles = [
        Box([0.47, 0.00], [0.53, 0.52]),
        Box([0.47, 0.50], [0.53, 1.00]),
    ]
    return Scene([[0, 1], [0, 1]], base, toggles,
                 start=[0.06, 0.5], goal=[0.94, 0.5])


BUNDLED_SCENES = {
    "passage": _passage,
    "rooms": _rooms,
    "zigzag": _zigzag,
    "clutter": _clutter,
}


def bundled_scene(name, infeasible=False):
    try:
        scene = BUNDLED_SCENES[name]()
    except KeyError:
        raise ValueError(
            f"unknown scene {name!r}; available: {sorted(BUNDLED_SCENES)}"
        ) from None
    scene.toggles_active = infeasible
    return scene
