#include "iss/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "iss/errors.hpp"
#include "iss/numerics.hpp"

namespace iss {

HilbertProgram make_program(std::size_t dim, std::vector<double> goal,
                            std::map<int, std::vector<std::vector<double>>> subspaces) {
    if (dim == 0) throw BadParameter("ambient dimension must be positive");
    if (goal.size() != dim) throw BadParameter("goal dimension mismatch");
    if (!(norm2(goal) > 0.0)) throw BadParameter("goal must be nonzero");
    for (const auto& [p, vecs] : subspaces) {
        if (p < 0) throw BadParameter("participant indices are non-negative");
        if (vecs.empty()) throw BadParameter("every subspace needs a spanning vector");
        for (const auto& b : vecs) {
            if (b.size() != dim) throw BadParameter("spanning vector dimension mismatch");
            if (!(norm2(b) > 0.0)) throw BadParameter("spanning vectors must be nonzero");
        }
    }
    return HilbertProgram{dim, std::move(goal), std::move(subspaces)};
}

namespace {

std::vector<int> sorted_unique(const std::vector<int>& subset) {
    std::vector<int> s = subset;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<std::vector<double>> stack_vectors(const HilbertProgram& prog,
                                               const std::vector<int>& subset) {
    std::vector<std::vector<double>> cols;
    for (int p : subset) {
        auto it = prog.subspaces.find(p);
        if (it == prog.subspaces.end()) throw UnknownParticipant("participant has no subspace");
        for (const auto& b : it->second) cols.push_back(b);
    }
    return cols;
}

} // namespace

std::pair<bool, ProjectionSplit> qualify(const HilbertProgram& prog, const std::vector<int>& subset,
                                         double tol) {
    if (!(tol > 0.0)) throw BadParameter("tolerance must be positive");
    std::vector<int> s = sorted_unique(subset);
    if (s.empty()) throw EmptySubset("cannot qualify an empty subset");

    std::vector<std::vector<double>> basis = orthonormalize(stack_vectors(prog, s));
    ProjectionSplit split;
    split.v.assign(prog.dim, 0.0);
    split.w = prog.goal;
    for (const auto& q : basis) {
        double c = dot(prog.goal, q);
        for (std::size_t i = 0; i < prog.dim; ++i) {
            split.v[i] += c * q[i];
            split.w[i] -= c * q[i];
        }
    }
    split.residual_variance = dot(split.w, split.w);
    bool ok = norm2(split.w) <= tol * norm2(prog.goal);
    return {ok, split};
}

Dealing compile_to_scheme(const HilbertProgram& prog, Stream& rng) {
    std::vector<double> xi(prog.dim);
    for (double& x : xi) x = rng.normal();
    Dealing d;
    d.secret = dot(prog.goal, xi);
    for (const auto& [p, vecs] : prog.subspaces) {
        std::vector<double> share;
        for (const auto& b : vecs) share.push_back(dot(b, xi));
        d.shares.push_back(std::move(share));
    }
    return d;
}

double recover(const HilbertProgram& prog, const std::vector<int>& subset,
               const std::map<int, std::vector<double>>& shares, double tol) {
    auto [ok, split] = qualify(prog, subset, tol);
    if (!ok) throw NotQualified("goal is outside the subset's span");
    return linear_estimate(prog, subset, shares);
}

double linear_estimate(const HilbertProgram& prog, const std::vector<int>& subset,
                       const std::map<int, std::vector<double>>& shares) {
    std::vector<int> s = sorted_unique(subset);
    if (s.empty()) throw EmptySubset("cannot estimate from an empty subset");

    std::vector<std::vector<double>> cols = stack_vectors(prog, s);
    std::vector<double> values;
    for (int p : s) {
        auto it = shares.find(p);
        if (it == shares.end() || it->second.size() != prog.subspaces.at(p).size()) {
            throw WrongShareCount("share list does not match the participant's subspace");
        }
        for (double v : it->second) values.push_back(v);
    }

    // Least squares by modified Gram-Schmidt; dependent columns drop out
    // with zero coefficient, which cannot change the fit because the span
    // is unchanged.
    std::vector<std::vector<double>> q;
    std::vector<std::size_t> kept;
    std::vector<std::vector<double>> R;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<double> v = cols[j];
        std::vector<double> coef(q.size(), 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < q.size(); ++i) {
                double c = dot(v, q[i]);
                coef[i] += c;
                for (std::size_t t = 0; t < v.size(); ++t) v[t] -= c * q[i][t];
            }
        }
        double rnorm = norm2(v);
        if (rnorm <= 1e-12 * norm2(cols[j])) continue;
        for (double& x : v) x /= rnorm;
        q.push_back(std::move(v));
        kept.push_back(j);
        coef.push_back(rnorm);
        R.push_back(std::move(coef));
    }
    if (!kept.empty()) {
        double dmax = 0.0;
        double dmin = 0.0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            double diag = R[i][i];
            if (i == 0) dmax = dmin = diag;
            dmax = std::max(dmax, diag);
            dmin = std::min(dmin, diag);
        }
        if (dmax > 1e12 * dmin) {
            throw IllConditioned("condition proxy " + std::to_string(dmax / dmin) +
                                 " exceeds 1e12");
        }
    }

    std::vector<double> y(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) y[i] = dot(prog.goal, q[i]);
    std::vector<double> lambda(kept.size(), 0.0);
    for (std::size_t i = kept.size(); i-- > 0;) {
        double acc = y[i];
        for (std::size_t l = i + 1; l < kept.size(); ++l) acc -= R[l][i] * lambda[l];
        lambda[i] = acc / R[i][i];
    }

    double out = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) out += lambda[i] * values[kept[i]];
    return out;
}

HilbertProgram parse_program(std::istream& in) {
    std::size_t dim = 0;
    std::vector<double> goal;
    std::map<int, std::vector<std::vector<double>>> subs;
    std::string line;
    int lineno = 0;
    int stage = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        if (stage == 0) {
            std::string kw;
            long m = 0;
            if (!(ls >> kw >> m) || kw != "dim" || m < 1) {
                throw ParseError("expected 'dim m'", lineno);
            }
            dim = static_cast<std::size_t>(m);
            stage = 1;
        } else if (stage == 1) {
            std::string kw;
            if (!(ls >> kw) || kw != "goal") throw ParseError("expected 'goal v1 .. vm'", lineno);
            double v;
            while (ls >> v) goal.push_back(v);
            if (goal.size() != dim) throw ParseError("goal component count mismatch", lineno);
            stage = 2;
        } else {
            int p;
            if (!(ls >> p)) throw ParseError("expected a participant index", lineno);
            std::vector<double> b;
            double v;
            while (ls >> v) b.push_back(v);
            if (b.size() != dim) throw ParseError("vector component count mismatch", lineno);
            subs[p].push_back(std::move(b));
        }
    }
    if (stage != 2) throw ParseError("program ended before the goal line", lineno);
    return make_program(dim, std::move(goal), std::move(subs));
}

void serialize_program(std::ostream& out, const HilbertProgram& prog) {
    std::streamsize saved = out.precision(17);
    out << "dim " << prog.dim << "\n";
    out << "goal";
    for (double v : prog.goal) out << " " << v;
    out << "\n";
    for (const auto& [p, vecs] : prog.subspaces) {
        for (const auto& b : vecs) {
            out << p;
            for (double v : b) out << " " << v;
            out << "\n";
        }
    }
    out.precision(saved);
}

HilbertProgram program_from_threshold(int k, const std::vector<double>& labels) {
    if (k < 2) throw BadParameter("threshold k must be at least 2");
    auto row_at = [k](double x) {
        std::vector<double> row(static_cast<std::size_t>(k));
        for (int l = 1; l <= k; ++l) {
            double v = 1.0;
            for (int j = 1; j <= k; ++j) {
                if (j != l) {
                    v *= (x - static_cast<double>(j) / k) /
                         (static_cast<double>(l) / k - static_cast<double>(j) / k);
                }
            }
            row[static_cast<std::size_t>(l - 1)] = v;
        }
        return row;
    };
    std::map<int, std::vector<std::vector<double>>> subs;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        subs[static_cast<int>(i)] = {row_at(labels[i])};
    }
    return make_program(static_cast<std::size_t>(k), row_at(0.0), std::move(subs));
}

HilbertProgram program_from_l2(const std::vector<double>& sigmas) {
    std::size_t n = sigmas.size();
    std::map<int, std::vector<std::vector<double>>> subs;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> b(n, 0.0);
        b[i] = sigmas[i];
        subs[static_cast<int>(i)] = {std::move(b)};
    }
    return make_program(n, sigmas, std::move(subs));
}

HilbertProgram program_from_noisy(int n) {
    if (n < 1) throw BadParameter("need at least one participant");
    std::size_t dim = static_cast<std::size_t>(n) + 1;
    std::vector<double> goal(dim, 0.0);
    goal[0] = 1.0;
    std::map<int, std::vector<std::vector<double>>> subs;
    for (int i = 0; i < n; ++i) {
        std::vector<double> b(dim, 0.0);
        b[0] = 1.0;
        b[static_cast<std::size_t>(i) + 1] = 1.0;
        subs[i] = {std::move(b)};
    }
    return make_program(dim, std::move(goal), std::move(subs));
}

HilbertProgram program_from_obfuscated(const std::vector<double>& r_values) {
    if (r_values.empty()) throw BadParameter("need at least one participant");
    std::size_t dim = r_values.size() + 2;
    std::vector<double> goal(dim, 0.0);
    goal[0] = 1.0;
    std::map<int, std::vector<std::vector<double>>> subs;
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        std::vector<double> b(dim, 0.0);
        b[0] = 1.0;
        b[1] = r_values[i];
        b[i + 2] = 1.0;
        subs[static_cast<int>(i)] = {std::move(b)};
    }
    return make_program(dim, std::move(goal), std::move(subs));
}

} // namespace iss
