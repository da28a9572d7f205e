#include "fedlora/task.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fedlora/errors.hpp"

namespace fedlora {

std::size_t TaskData::total_train_samples() const {
    std::size_t n = 0;
    for (const auto& s : shards) n += s.features.rows();
    return n;
}

std::vector<std::size_t> quota_from_proportions(const std::vector<double>& proportions,
                                                std::size_t total) {
    const std::size_t k = proportions.size();
    std::vector<std::size_t> quota(k);
    std::vector<std::pair<double, std::size_t>> remainders(k);
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const double exact = proportions[c] * static_cast<double>(total);
        quota[c] = static_cast<std::size_t>(std::floor(exact));
        assigned += quota[c];
        remainders[c] = {exact - std::floor(exact), c};
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& lhs, const auto& rhs) {
        if (lhs.first != rhs.first) return lhs.first > rhs.first;
        return lhs.second < rhs.second;  // ties toward lower class index
    });
    for (std::size_t i = 0; assigned < total; ++i, ++assigned) quota[remainders[i % k].second]++;
    return quota;
}

namespace {

std::size_t teacher_label(const BaseModel& teacher, const double* x, std::size_t dim) {
    Matrix row(1, dim);
    std::copy(x, x + dim, row.data());
    Matrix logits = teacher.forward(row);
    std::size_t best = 0;
    for (std::size_t c = 1; c < logits.cols(); ++c)
        if (logits(0, c) > logits(0, best)) best = c;
    return best;
}

TaskShard draw_unconstrained(const BaseModel& teacher, RngStream& stream, std::size_t n,
                             std::size_t client_id) {
    const std::size_t dim = teacher.input_dim();
    TaskShard shard;
    shard.client_id = client_id;
    shard.features = Matrix(n, dim);
    shard.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = shard.features.data() + i * dim;
        for (std::size_t d = 0; d < dim; ++d) row[d] = stream.next_gaussian();
        shard.labels[i] = teacher_label(teacher, row, dim);
    }
    return shard;
}

}  // namespace

TaskData generate_task(const BaseModel& teacher, const TaskSpec& spec, std::uint64_t seed) {
    if (spec.num_clients < 1) throw ConfigError("task.num_clients: need at least 1");
    if (spec.samples_per_client < 1) throw ConfigError("task.samples_per_client: need at least 1");
    if (spec.test_samples < 1) throw ConfigError("task.test_samples: need at least 1");
    if (!(spec.concentration > 0.0)) throw ConfigError("task.concentration: must be > 0");

    const std::size_t dim = teacher.input_dim();
    const std::size_t classes = teacher.num_classes();

    TaskData data;
    data.shards.reserve(spec.num_clients);
    for (std::size_t c = 0; c < spec.num_clients; ++c) {
        const std::uint64_t stream_seed = derive_seed(seed, "task.client", c);
        data.shard_stream_seeds.push_back(stream_seed);
        RngStream stream(stream_seed);

        const std::vector<double> proportions = stream.next_dirichlet(spec.concentration, classes);
        std::vector<std::size_t> quota =
            quota_from_proportions(proportions, spec.samples_per_client);

        TaskShard shard;
        shard.client_id = c;
        shard.features = Matrix(spec.samples_per_client, dim);
        shard.labels.resize(spec.samples_per_client);

        std::size_t filled = 0;
        std::vector<double> candidate(dim);
        // Rejection against the quota; after the attempt budget, take samples
        // as they come so generation always terminates.
        const std::size_t max_attempts = 200 * spec.samples_per_client + 10000;
        for (std::size_t attempt = 0;
             filled < spec.samples_per_client && attempt < max_attempts; ++attempt) {
            for (std::size_t d = 0; d < dim; ++d) candidate[d] = stream.next_gaussian();
            const std::size_t label = teacher_label(teacher, candidate.data(), dim);
            if (quota[label] == 0) continue;
            quota[label]--;
            std::copy(candidate.begin(), candidate.end(), shard.features.data() + filled * dim);
            shard.labels[filled] = label;
            ++filled;
        }
        for (; filled < spec.samples_per_client; ++filled) {
            for (std::size_t d = 0; d < dim; ++d) candidate[d] = stream.next_gaussian();
            std::copy(candidate.begin(), candidate.end(), shard.features.data() + filled * dim);
            shard.labels[filled] = teacher_label(teacher, candidate.data(), dim);
        }
        data.shards.push_back(std::move(shard));
    }

    data.test_stream_seed = derive_seed(seed, "task.test", 0);
    RngStream test_stream(data.test_stream_seed);
    data.test = draw_unconstrained(teacher, test_stream, spec.test_samples, ~std::size_t{0});
    return data;
}

}  // namespace fedlora
