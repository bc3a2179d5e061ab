"""Expected values for the shipped scenarios, from textbook constructions in
150-digit arithmetic: pure boost matrices, coordinate times read off in an
observer's rest frame, rod simultaneity, ray limits, angle defects.

    python3 scenarios/oracle.py

Nothing here calls the Rust code; the printed tables are pasted into the
`expect` blocks of the scenario files.
"""

import json

from mpmath import mp, mpf, matrix, sqrt, acosh, atanh, asinh, cosh, sinh, log, exp, acos, atan2, pi, cos, sin

mp.dps = 150


def vec(*xs):
    return [mpf(str(x)) for x in xs]


def dot(u, v):
    return -u[0] * v[0] + sum(a * b for a, b in zip(u[1:], v[1:]))


def unit(x):
    s = sqrt(-dot(x, x))
    return [a / s for a in x] if x[0] > 0 else [-a / s for a in x]


def add(u, v, s=1):
    return [a + s * b for a, b in zip(u, v)]


def scale(u, s):
    return [s * a for a in u]


def apply(m, x):
    n = len(x)
    return [sum(m[i, j] * x[j] for j in range(n)) for i in range(n)]


def pure_boost(beta):
    """Standard boost matrix taking the rest observer to velocity `beta` (c = 1)."""
    n = len(beta)
    b2 = sum(b * b for b in beta)
    g = 1 / sqrt(1 - b2)
    m = matrix(n + 1, n + 1)
    m[0, 0] = g
    for i in range(n):
        m[0, i + 1] = m[i + 1, 0] = g * beta[i]
        for j in range(n):
            m[i + 1, j + 1] = (1 if i == j else 0) + ((g - 1) * beta[i] * beta[j] / b2 if b2 else 0)
    return m


def rest_frame(p):
    """Boost taking the origin observer to the unit observer p."""
    p = unit(p)
    return pure_boost([a / p[0] for a in p[1:]])


def inverse(m):
    return m**-1


def coords_in(p, x):
    """Coordinates of the event x in the rest frame of p."""
    return apply(inverse(rest_frame(p)), x)


def velocity_of(q, p, c=1):
    """Velocity of q read in p's rest frame."""
    y = coords_in(p, unit(q))
    return [c * a / y[0] for a in y[1:]]


def dist(p, q):
    return acosh(-dot(unit(p), unit(q)))


def log_map(p, q):
    p, q = unit(p), unit(q)
    d = acosh(-dot(p, q))
    return scale(add(q, scale(p, cosh(d)), -1), d / sinh(d))


def frame(p):
    m = rest_frame(p)
    n = m.rows
    return [[m[i, k] for i in range(n)] for k in range(n)]


def frame_components(p, v):
    return [dot(v, e) for e in frame(p)[1:]]


def along_boost(p, q):
    """Boost along the geodesic through p and q taking p to q."""
    L = rest_frame(p)
    return L * pure_boost(velocity_of(q, p)) * inverse(L)


def fl(x):
    return float(x)


def fls(xs):
    return [float(x) for x in xs]


def rows(m):
    return [[float(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


R2 = sqrt(2)
O = vec(1, 0, 0)
Q = [R2, mpf(1), mpf(0)]
A = vec(3, 1, 2)
B = vec(2, -1, 0.5)
E = {}


def expect(scenario, task, **values):
    E.setdefault(scenario, {})[task] = values


# -- minkowski --------------------------------------------------------------
W = vec(1, 2, 0)
expect("minkowski", "form_q_o", value=fl(dot(Q, O)))
expect("minkowski", "gram_o_q", matrix=[[fl(dot(u, v)) for v in (O, Q)] for u in (O, Q)], det=-1.0)
expect("minkowski", "orthonormalize_o_q", basis=[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], norm_sq=[-1.0, 1.0])
normal = scale(Q, dot(W, Q) / dot(Q, Q))
expect("minkowski", "project_w_on_q", normal=fls(normal), tangential=fls(add(W, normal, -1)))
expect("minkowski", "classify_w", tag="spacelike", orientation="unoriented", norm_sq=3.0)
expect("minkowski", "classify_light", tag="lightlike", orientation="future", norm_sq=0.0)
expect("minkowski", "classify_past", tag="timelike", orientation="past", norm_sq=-2.75)

# -- kinematic --------------------------------------------------------------
def gamma_from_velocity(p, q):
    v = velocity_of(q, p)
    return 1 / sqrt(1 - sum(a * a for a in v)), sqrt(sum(a * a for a in v))


def tance(p, q):
    return dot(p, q) ** 2 / (dot(p, p) * dot(q, q))


for tag, (p, q) in {"o_q": (O, Q), "a_b": (A, B)}.items():
    g, v = gamma_from_velocity(p, q)
    assert abs(sqrt(tance(p, q)) - g) < mpf(10) ** -40
    expect("kinematic", f"tance_{tag}", value=fl(g * g))
    expect("kinematic", f"gamma_{tag}", value=fl(g))
    expect("kinematic", f"speed_{tag}", value=fl(v))
expect("kinematic", "distance_o_q", value=fl(acosh(R2)))


def coordinate_time(p, x):
    return coords_in(p, x)[0]


for tag, (p, q, w) in {"o_q_w": (O, Q, W), "a_b_flash": (A, B, vec(0, 1, 1))}.items():
    expect("kinematic", f"dilation_{tag}", value=fl(abs(coordinate_time(q, w)) / abs(coordinate_time(p, w))))


def rod_ratio(p, q, w):
    """Rod at rest for p spanned by w; q measures endpoints simultaneous for q."""
    p, q = unit(p), unit(q)
    s = -dot(w, q) / dot(p, q)
    d = add(w, scale(p, s))
    return sqrt(dot(d, d)) / sqrt(dot(w, w))


expect("kinematic", "contraction_coplanar", value=fl(rod_ratio(O, Q, vec(0, 1, 0))))
assert abs(rod_ratio(O, Q, vec(0, 1, 0)) - 1 / R2) < mpf(10) ** -40
expect("kinematic", "contraction_skew", value=fl(rod_ratio(O, Q, vec(0, 0.6, 0.8))))


def eta(p, q, u):
    return dot(u, p) * dot(p, q) * dot(q, u) / (dot(p, p) * dot(q, q) * dot(u, u))


def verdict(p, q, u):
    tp, tq = coordinate_time(p, u), coordinate_time(q, u)
    return "agree" if tp * tq > 0 else "disagree"


expect("kinematic", "eta_o_q_u", value=fl(R2 * (2 - R2) / 3), verdict=verdict(O, Q, W))
assert abs(eta(O, Q, W) - R2 * (2 - R2) / 3) < mpf(10) ** -40
F = vec(0, 1, 1)
expect("kinematic", "eta_a_b_flash", value=fl(eta(A, B, F)), verdict=verdict(A, B, F))

# -- geodesics --------------------------------------------------------------
d = mpf("0.88137358701954302")
expect("geodesics", "exp_o", point=[fl(cosh(d)), fl(sinh(d)), 0.0])
expect("geodesics", "log_o_q", components=[fl(acosh(R2)), 0.0], length=fl(acosh(R2)))
lab = log_map(A, B)
expect("geodesics", "log_a_b", components=fls(frame_components(A, lab)), length=fl(dist(A, B)))
expect("geodesics", "distance_a_b", value=fl(dist(A, B)))
fa = frame(A)
v = add(scale(fa[1], mpf("0.3")), scale(fa[2], mpf("-0.2")))
moved = apply(along_boost(A, B), v)
expect(
    "geodesics",
    "transport_a_b",
    components=fls(frame_components(B, moved)),
    vector=fls(moved),
    length=fl(sqrt(dot(moved, moved))),
)
expect("geodesics", "midpoint_a_b", point=fls(unit(add(unit(A), unit(B)))))
expect("geodesics", "vertices_o_q", first=[1.0, 1.0, 0.0], second=[1.0, -1.0, 0.0])
expect("geodesics", "polar_o_q", point=[0.0, 0.0, 1.0])
expect("geodesics", "signed_distance_side", value=1.0)
expect("geodesics", "mobius_o_q_a", point=fls(apply(rest_frame(Q), unit(A))))

# -- velocity (c = 2) -------------------------------------------------------
C = mpf(2)


def einstein(base, v1, v2, c=C):
    """v2 measured by an observer moving at v1, both read in base's frame."""
    u1 = pure_boost([a / c for a in v1])
    b2 = [a / c for a in v2]
    g2 = 1 / sqrt(1 - sum(a * a for a in b2))
    four = apply(u1, [g2] + [g2 * a for a in b2])
    return [c * a / four[0] for a in four[1:]]


expect("velocity", "relative_o_q", components=fls(velocity_of(Q, O, C)), speed=fl(C / R2))
expect("velocity", "relative_o_moving", components=[1.2, 0.0], speed=1.2)
cases = {
    "collinear": (O, vec(1.2, 0), vec(0.8, 0)),
    "perpendicular": (O, vec(1.2, 0), vec(0, 1.0)),
    "general_at_b": (B, vec(0.9, -0.7), vec(-0.3, 1.1)),
    "near_light": (O, vec(1.98, 0), vec(-0.5, 1.9)),
}
for name, (base, v1, v2) in cases.items():
    s = einstein(base, v1, v2)
    speed = sqrt(sum(a * a for a in s))
    assert speed < C
    expect("velocity", name, sum=fls(s), sum_parallelogram=fls(s), sum_components=fls(s), speed=fl(speed))
col = (mpf("1.2") + mpf("0.8")) / (1 + mpf("1.2") * mpf("0.8") / C**2)
assert abs(col - einstein(O, vec(1.2, 0), vec(0.8, 0))[0]) < mpf(10) ** -40
perp = sqrt(mpf("1.44") + 1 * (1 - mpf("1.44") / C**2))
assert abs(perp - sqrt(sum(a * a for a in einstein(O, vec(1.2, 0), vec(0, 1))))) < mpf(10) ** -40
expect("velocity", "rapidity_half_c", components=[fl(C * atanh(mpf(1) / 2)), 0.0], rapidity=fl(atanh(mpf(1) / 2)))

# -- isometry ---------------------------------------------------------------
boost = rest_frame(Q)
expect("isometry", "boost_o_q", matrix=rows(boost), image=fls(apply(boost, W)), defect=0.0, **{"class": "hyperbolic"})
th = mpf("0.7")
rot = matrix([[1, 0, 0], [0, cos(th), -sin(th)], [0, sin(th), cos(th)]])
expect("isometry", "rotation", matrix=rows(rot), **{"class": "elliptic"})

# null rotation fixing f = (1,1,0): with g = (1,-1,0) and e = (0,0,1) it sends
# e -> e - s f and g -> g - 2 s e + s^2 f
s = mpf(1)
f_, g_, e_ = vec(1, 1, 0), vec(1, -1, 0), vec(0, 0, 1)
basis = matrix([[f_[i], g_[i], e_[i]] for i in range(3)])
images = [f_, add(add(g_, scale(e_, -2 * s)), scale(f_, s * s)), add(e_, scale(f_, -s))]
par = matrix([[images[j][i] for j in range(3)] for i in range(3)]) * inverse(basis)
expect("isometry", "parabolic_f", matrix=rows(par), **{"class": "parabolic"})

qh = unit(Q)
ref = matrix(3, 3)
for j in range(3):
    ej = [mpf(1) if i == j else mpf(0) for i in range(3)]
    col_ = add(scale(ej, -1), scale(qh, -2 * dot(ej, qh)))
    for i in range(3):
        ref[i, j] = col_[i]
expect("isometry", "reflect_q", matrix=rows(ref), **{"class": "elliptic"})


def wigner(p1, p2, p3):
    m = along_boost(p2, p3) * along_boost(p1, p2) * inverse(along_boost(p1, p3))
    r = inverse(rest_frame(p3)) * m * rest_frame(p3)
    return atan2(r[2, 1], r[1, 1]), m


def oriented_defect(p1, p2, p3):
    pts = [unit(p) for p in (p1, p2, p3)]
    total = 0
    for i in range(3):
        a, b, c = pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]
        u, w = log_map(a, b), log_map(a, c)
        total += acos(dot(u, w) / sqrt(dot(u, u) * dot(w, w)))
    sign = 1 if mp.det(matrix([p1, p2, p3])) > 0 else -1
    return sign * (pi - total)


EAST = [1, mpf("0.6"), 0]
NORTH = [1, 0, mpf("0.6")]
ang, m = wigner(O, EAST, NORTH)
area = oriented_defect(O, EAST, NORTH)
assert abs(ang + area) < mpf(10) ** -40
expect("isometry", "wigner", angle=fl(ang), area=fl(area), matrix=rows(m), **{"class": "elliptic"})
FAR = [cosh(2), sinh(2), 0]
expect("isometry", "wigner_collinear", angle=0.0, area=0.0, **{"class": "identity"})

# -- doppler ----------------------------------------------------------------
def busemann_ray(f, p, q, T=mpf(60)):
    """lim d(p, r(T)) - d(q, r(T)) along the ray r from p toward f."""
    p = unit(p)
    xi = add(f, scale(p, dot(f, p)))
    xi = scale(xi, 1 / sqrt(dot(xi, xi)))
    r = add(scale(p, cosh(T)), scale(xi, sinh(T)))
    return dist(p, r) - dist(q, r)


FPH = vec(1, 1, 0)
REC = [1, mpf("0.6"), 0]
expect("doppler", "receding", value=fl(sqrt((1 + mpf("0.6")) / (1 - mpf("0.6")))))
expect("doppler", "busemann_receding", value=fl(busemann_ray(FPH, O, REC)))
G = vec(1, 0.6, -0.8)
b = busemann_ray(G, A, B)
expect("doppler", "busemann_a_b", value=fl(b))
expect("doppler", "ratio_a_b", value=fl(exp(b)))
energy = dot(G, unit(A)) / dot(G, unit(B))
assert abs(energy - exp(b)) < mpf(10) ** -40
expect("doppler", "energy_a_b", value=fl(energy))
H = vec(1.28125, 0.28125, 0.75)
expect("doppler", "horocycle_level", value=fl(dot(FPH, unit(O)) / dot(FPH, unit(H))))

# -- dynamics (a = c = 1) ---------------------------------------------------
def hyperbolic(tau):
    return [sinh(tau), cosh(tau) - 1, 0], [cosh(tau), sinh(tau), 0]


x5, u5 = hyperbolic(mpf(5))
expect("dynamics", "closed_form", position=fls(x5), four_velocity=fls(u5))
expect(
    "dynamics",
    "constant_push",
    final_tau=5.0,
    samples=5001.0,
    final_position=fls(x5),
    final_four_velocity=fls(u5),
    final_acceleration=1.0,
)
x1, u1 = hyperbolic(mpf(1))
expect(
    "dynamics",
    "constant_short",
    final_tau=1.0,
    samples=10001.0,
    final_position=fls(x1),
    final_four_velocity=fls(u1),
    max_drift=0.0,
)
expect("dynamics", "circular_orbit", final_tau=10.0, samples=10001.0, max_drift=0.0, final_acceleration=0.5)


def toml_value(x):
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, list):
        return "[" + ", ".join(toml_value(a) for a in x) + "]"
    return repr(float(x))


def main():
    for scen, tasks in E.items():
        print(f"## {scen}")
        for task, values in tasks.items():
            print(f"[{task}]")
            for key, val in values.items():
                print(f"{key} = {toml_value(val)}")
        print()


if __name__ == "__main__":
    main()
