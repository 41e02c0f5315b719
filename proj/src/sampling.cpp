#include "pou/sampling.hpp"

#include "pou/detail/parallel.hpp"
#include "pou/errors.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace pou {

MetricSample::MetricSample(std::vector<PointId> ids, std::vector<Rational> dense)
    : ids_(std::move(ids)), dense_(std::move(dense)) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!is_valid_input_label(ids_[i])) {
            throw ParseError("invalid point id \"" + ids_[i] + "\"");
        }
        if (!index_.emplace(ids_[i], i).second) {
            throw ParseError("duplicate point id \"" + ids_[i] + "\"");
        }
    }
    const std::size_t n = ids_.size();
    if (dense_.size() != n * n) {
        throw DomainError("distance_table_shape", "distance table is not n by n");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dense_[i * n + i] != 0) {
            throw DomainError("metric_identity",
                              "nonzero self-distance at \"" + ids_[i] + "\"");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dense_[i * n + j] < 0) {
                throw DomainError("metric_nonnegative", "negative distance between \"" +
                                                            ids_[i] + "\" and \"" +
                                                            ids_[j] + "\"");
            }
            if (dense_[i * n + j] != dense_[j * n + i]) {
                throw DomainError("metric_symmetry", "asymmetric distance between \"" +
                                                         ids_[i] + "\" and \"" +
                                                         ids_[j] + "\"");
            }
        }
    }
    // Triangle inequality per unordered triple: the largest side must not
    // exceed the sum of the other two.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const Rational& a = dense_[i * n + j];
                const Rational& b = dense_[j * n + k];
                const Rational& c = dense_[i * n + k];
                if (a > b + c || b > a + c || c > a + b) {
                    throw DomainError("triangle_inequality",
                                      "triangle inequality fails on {\"" + ids_[i] +
                                          "\", \"" + ids_[j] + "\", \"" + ids_[k] +
                                          "\"}");
                }
            }
        }
    }
}

MetricSample MetricSample::from_pairs(
    std::vector<PointId> ids,
    const std::vector<std::tuple<PointId, PointId, Rational>>& pairs) {
    std::map<PointId, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!index.emplace(ids[i], i).second) {
            throw ParseError("duplicate point id \"" + ids[i] + "\"");
        }
    }
    const std::size_t n = ids.size();
    std::vector<Rational> dense(n * n, Rational(0));
    std::vector<bool> given(n * n, false);
    for (const auto& [first, second, value] : pairs) {
        const auto fi = index.find(first);
        const auto si = index.find(second);
        if (fi == index.end() || si == index.end()) {
            throw ParseError("distance pair names unknown point id \"" +
                             (fi == index.end() ? first : second) + "\"");
        }
        const std::size_t i = fi->second;
        const std::size_t j = si->second;
        if (i == j) {
            if (value != 0) {
                throw DomainError("metric_identity",
                                  "nonzero self-distance at \"" + first + "\"");
            }
            continue;
        }
        if (given[i * n + j]) {
            throw ParseError("distance for {\"" + first + "\", \"" + second +
                             "\"} given more than once");
        }
        given[i * n + j] = given[j * n + i] = true;
        dense[i * n + j] = dense[j * n + i] = value;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!given[i * n + j]) {
                throw ParseError("missing distance for {\"" + ids[i] + "\", \"" +
                                 ids[j] + "\"}");
            }
        }
    }
    return MetricSample(std::move(ids), std::move(dense));
}

std::size_t MetricSample::index_of(const PointId& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) {
        throw DomainError("unknown_point_id", "unknown point id \"" + id + "\"");
    }
    return it->second;
}

const Rational& MetricSample::distance(std::size_t i, std::size_t j) const {
    return dense_[i * ids_.size() + j];
}

Rational MetricSample::diameter() const {
    Rational best(0);
    for (const auto& d : dense_) {
        if (d > best) best = d;
    }
    return best;
}

IndexedCover::IndexedCover(std::map<VertexLabel, std::set<PointId>> sets)
    : sets_(std::move(sets)) {
    for (const auto& [label, members] : sets_) {
        if (!is_valid_input_label(label)) {
            throw ParseError("invalid cover label \"" + label + "\"");
        }
    }
}

Rational all_covered_surrogate(const MetricSample& sample) {
    return Rational(1) + sample.diameter();
}

namespace {

std::vector<ProbVector> distance_pou_impl(const MetricSample& sample,
                                          const IndexedCover& cover, bool parallel) {
    const std::size_t n = sample.size();

    // Pre-resolve each cover set to the index list of its complement; the
    // per-point kernel then only walks index vectors.
    std::vector<VertexLabel> labels;
    std::vector<std::vector<std::size_t>> complements;
    std::vector<char> covered(n, 0);
    for (const auto& [label, members] : cover.sets()) {
        std::vector<char> in_set(n, 0);
        for (const auto& id : members) {
            const auto it = std::find(sample.ids().begin(), sample.ids().end(), id);
            if (it == sample.ids().end()) {
                throw DomainError("cover_member_ids",
                                  "cover set \"" + label + "\" names unknown point \"" +
                                      id + "\"");
            }
            const auto index =
                static_cast<std::size_t>(std::distance(sample.ids().begin(), it));
            in_set[index] = 1;
            covered[index] = 1;
        }
        std::vector<std::size_t> complement;
        for (std::size_t i = 0; i < n; ++i) {
            if (!in_set[i]) complement.push_back(i);
        }
        labels.push_back(label);
        complements.push_back(std::move(complement));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!covered[i]) {
            throw DomainError("cover_covers_sample",
                              "point \"" + sample.ids()[i] + "\" is in no cover set");
        }
    }

    const Rational surrogate = all_covered_surrogate(sample);
    std::vector<std::optional<ProbVector>> out(n);
    detail::indexed_loop(n, parallel, [&](std::size_t x) {
        std::map<VertexLabel, Rational> raw;
        Rational total(0);
        for (std::size_t s = 0; s < labels.size(); ++s) {
            Rational clearance;
            if (complements[s].empty()) {
                clearance = surrogate;
            } else {
                clearance = sample.distance(x, complements[s][0]);
                for (std::size_t t = 1; t < complements[s].size(); ++t) {
                    const Rational& d = sample.distance(x, complements[s][t]);
                    if (d < clearance) clearance = d;
                }
            }
            if (clearance > 0) {
                raw.emplace(labels[s], clearance);
                total += clearance;
            }
        }
        if (total == 0) {
            throw DomainError("boundary_degeneracy",
                              "point \"" + sample.ids()[x] +
                                  "\" has zero clearance from every cover set");
        }
        for (auto& [label, value] : raw) value /= total;
        out[x] = ProbVector(WeightVector(std::move(raw)));
    });

    std::vector<ProbVector> result;
    result.reserve(n);
    for (auto& point : out) result.push_back(std::move(*point));
    return result;
}

} // namespace

std::vector<ProbVector> distance_pou(const MetricSample& sample,
                                     const IndexedCover& cover) {
    return distance_pou_impl(sample, cover, true);
}

std::vector<ProbVector> distance_pou_serial(const MetricSample& sample,
                                            const IndexedCover& cover) {
    return distance_pou_impl(sample, cover, false);
}

CechResult cech_pipeline(const MetricSample& sample, const Rational& radius) {
    if (radius <= 0) {
        throw DomainError("radius_positive", "radius must be positive");
    }
    std::map<VertexLabel, std::set<PointId>> sets;
    for (std::size_t p = 0; p < sample.size(); ++p) {
        std::set<PointId> ball;
        for (std::size_t q = 0; q < sample.size(); ++q) {
            if (sample.distance(p, q) < radius) {
                ball.insert(sample.ids()[q]);
            }
        }
        sets.emplace("b" + sample.ids()[p], std::move(ball));
    }
    CechResult result;
    result.cover = IndexedCover(std::move(sets));
    result.partition = distance_pou(sample, result.cover);
    result.nerve = nerve_of_sample(result.partition);
    return result;
}

} // namespace pou
