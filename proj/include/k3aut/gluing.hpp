#pragma once

#include "k3aut/isometry.hpp"
#include "k3aut/lattice.hpp"

#include <vector>

namespace k3aut {

/// NS = L_d glued to a transcendental lattice modelled as a copy of L_d whose only
/// Hodge isometries are +-I.
struct GluingContext {
    Integer d;
    Gram2 ns_gram;
    Gram2 transcendental_model;
    std::vector<int> allowed_transcendental_actions;
};

inline GluingContext make_gluing_context(const Integer& d) {
    Gram2 Q = gram_for_degree(d);
    return {d, Q, Q, {1, -1}};
}

namespace detail {

inline Integer mod_inverse(const Integer& a, const Integer& n) {
    Integer old_r = mod_floor(a, n), r = n;
    Integer old_s = 1, s = 0;
    while (r != 0) {
        Integer q = old_r / r;
        Integer t = old_r - q * r;
        old_r = std::move(r);
        r = std::move(t);
        t = old_s - q * s;
        old_s = std::move(s);
        s = std::move(t);
    }
    if (old_r != 1) throw domain_error(a.str() + " is not invertible modulo " + n.str());
    return mod_floor(old_s, n);
}

// m g == k g in Q^2/Z^2 for every generator of L*/L.
inline bool acts_as_scalar(const DiscriminantGroup& grp, const Mat2& m, const Integer& k) {
    for (const RationalVec2& g : grp.generators)
        if (m * g != scale(k, g)) return false;
    return true;
}

}  // namespace detail

/// The residue t (mod |disc|) with m g = t g on the cyclic group L_d*/L_d.
inline Integer disc_action(const Integer& d, const Isometry2& m) {
    const Gram2 Q = gram_for_degree(d);
    if (m.gram() != Q) throw domain_error("disc_action: isometry of a different lattice");
    DiscriminantGroup grp = discriminant_group(Q);
    if (!grp.is_cyclic())
        throw domain_error("disc_action: unsupported, discriminant group of L_" + d.str() +
                           " is not cyclic");
    const RationalVec2& g = grp.generator();
    const Integer& n = g.den;
    Vec2 image = m.matrix() * Vec2{g.x, g.y};
    Integer t = gcd(g.x, n) == 1 ? mod_floor(image.x * detail::mod_inverse(g.x, n), n)
                                 : mod_floor(image.y * detail::mod_inverse(g.y, n), n);
    if (m.matrix() * g != scale(t, g)) throw consistency_error("disc_action is not scalar");
    return t;
}

/// Whether m on NS and epsilon*I on T induce the same map on the discriminant groups,
/// under the identity identification of the two copies of L_d*/L_d.
inline bool glues(const GluingContext& ctx, const Isometry2& m, int epsilon) {
    if (m.gram() != ctx.ns_gram) throw domain_error("glues: isometry of a different lattice");
    if (epsilon != 1 && epsilon != -1) throw domain_error("epsilon must be +1 or -1");
    return detail::acts_as_scalar(discriminant_group(ctx.ns_gram), m.matrix(), epsilon);
}

struct GluedElement {
    Isometry2 isometry;
    int epsilon;
};

struct SurfaceAutGroup {
    Integer d;
    std::size_t order = 0;
    Isometry2 generator;
    int epsilon = 1;
    bool within_theorem_scope = false;
    std::vector<GluedElement> elements;
};

/// Chamber-preserving isometries of NS that extend by +-I over T.
inline SurfaceAutGroup surface_aut_group(const Integer& d) {
    if (d < 1) throw domain_error("d must be >= 1, got " + d.str());
    const bool odd = d % 2 == 1;
    const GluingContext ctx = make_gluing_context(d);
    const std::vector<Isometry2> stab = odd ? chamber_stabilizer(d) : detail::ray_stabilizer(d);

    std::vector<GluedElement> elements;
    for (const Isometry2& m : stab)
        for (int eps : ctx.allowed_transcendental_actions)
            if (glues(ctx, m, eps)) {
                elements.push_back({m, eps});
                break;
            }

    const Isometry2 identity(Mat2::identity(), ctx.ns_gram);
    SurfaceAutGroup out{d, elements.size(), identity, 1, odd, elements};
    for (const GluedElement& e : elements)
        if (e.isometry != identity) {
            out.generator = e.isometry;
            out.epsilon = e.epsilon;
        }
    return out;
}

}  // namespace k3aut
