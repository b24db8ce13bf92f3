// JSON serialization of case-study instances, for reproduction and
// cross-implementation comparison.
#ifndef LRH_INSTANCE_JSON_HPP
#define LRH_INSTANCE_JSON_HPP

#include <json.hpp>

#include "lrh/lti.hpp"

namespace lrh::lti
{

namespace detail
{

inline nlohmann::json matrix_to_json(const Matrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i)
    {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j)
{
    const Index rows = static_cast<Index>(j.size());
    const Index cols = rows > 0 ? static_cast<Index>(j.at(0).size()) : 0;
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index k = 0; k < cols; ++k)
            m(i, k) = j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>();
    return m;
}

inline nlohmann::json vector_to_json(const Vector& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i)
        out.push_back(v[i]);
    return out;
}

inline Vector vector_from_json(const nlohmann::json& j)
{
    Vector v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i)
        v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
    return v;
}

inline nlohmann::json system_to_json(const LtiSystem& sys)
{
    return {{"A", matrix_to_json(sys.a)},
            {"B", vector_to_json(sys.b)},
            {"C", vector_to_json(sys.c.transpose())},
            {"D", sys.d},
            {"order", sys.order()}};
}

inline LtiSystem system_from_json(const nlohmann::json& j)
{
    LtiSystem sys;
    sys.a = matrix_from_json(j.at("A"));
    sys.b = vector_from_json(j.at("B"));
    sys.c = vector_from_json(j.at("C")).transpose();
    sys.d = j.at("D").get<double>();
    return sys;
}

} // namespace detail

inline nlohmann::json to_json(const TrajectoryInstance& inst)
{
    return {{"example", "trajectory"},
            {"system", detail::system_to_json(inst.system)},
            {"input", detail::vector_to_json(inst.input)},
            {"output", detail::vector_to_json(inst.output)},
            {"noisy_output", detail::vector_to_json(inst.noisy_output)},
            {"block_rows", inst.block_rows},
            {"sigma2", inst.sigma2},
            {"seed", inst.seed},
            {"rank", inst.rank}};
}

inline nlohmann::json to_json(const ImpulseInstance& inst)
{
    return {{"example", "impulse"},
            {"system", detail::system_to_json(inst.system)},
            {"response", detail::vector_to_json(inst.response)},
            {"noisy_response", detail::vector_to_json(inst.noisy_response)},
            {"block_rows", inst.block_rows},
            {"sigma2", inst.sigma2},
            {"seed", inst.seed},
            {"rank", inst.rank}};
}

inline TrajectoryInstance trajectory_from_json(const nlohmann::json& j)
{
    TrajectoryInstance inst;
    inst.system = detail::system_from_json(j.at("system"));
    inst.input = detail::vector_from_json(j.at("input"));
    inst.output = detail::vector_from_json(j.at("output"));
    inst.noisy_output = detail::vector_from_json(j.at("noisy_output"));
    inst.block_rows = j.at("block_rows").get<Index>();
    inst.sigma2 = j.at("sigma2").get<double>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.rank = j.at("rank").get<Index>();
    const Matrix u_block = build_hankel<double>(inst.input, inst.block_rows);
    inst.noise_free = build_hankel<double>(inst.output, inst.block_rows);
    inst.measurement = build_hankel<double>(inst.noisy_output, inst.block_rows);
    inst.transform =
        build_transform<double>(TransformKind::null_space_projector, u_block.cols(), u_block);
    return inst;
}

inline ImpulseInstance impulse_from_json(const nlohmann::json& j)
{
    ImpulseInstance inst;
    inst.system = detail::system_from_json(j.at("system"));
    inst.response = detail::vector_from_json(j.at("response"));
    inst.noisy_response = detail::vector_from_json(j.at("noisy_response"));
    inst.block_rows = j.at("block_rows").get<Index>();
    inst.sigma2 = j.at("sigma2").get<double>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.rank = j.at("rank").get<Index>();
    inst.noise_free = build_hankel<double>(inst.response, inst.block_rows);
    inst.measurement = build_hankel<double>(inst.noisy_response, inst.block_rows);
    inst.transform = build_transform<double>(TransformKind::identity, inst.noise_free.cols());
    return inst;
}

} // namespace lrh::lti

#endif // LRH_INSTANCE_JSON_HPP
