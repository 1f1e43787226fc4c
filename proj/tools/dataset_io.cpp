#include "dataset_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fjump/errors.hpp"

namespace fjump::io {

namespace {

MetricObject decode_row(const std::vector<double>& vals, Space space, int line) {
    auto fail = [&](const std::string& why) -> MetricObject {
        std::ostringstream os;
        os << "line " << line << ": " << why;
        throw_error(errc::invalid_input, os.str());
    };

    MetricObject obj;
    switch (space) {
        case Space::density:
            obj = QuantileDensity{
                Eigen::Map<const Eigen::VectorXd>(vals.data(), (long)vals.size())};
            break;
        case Space::covariance:
        case Space::network: {
            int p = (int)std::lround(std::sqrt((double)vals.size()));
            if (p * p != (int)vals.size())
                return fail("matrix columns are not a perfect square");
            obj = space == Space::covariance
                      ? MetricObject(CovMatrix{Eigen::Map<const Eigen::Matrix<
                            double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                            vals.data(), p, p)})
                      : MetricObject(NetworkLaplacian{Eigen::Map<const Eigen::Matrix<
                            double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                            vals.data(), p, p)});
            break;
        }
        case Space::sphere: {
            // Raw compositions; square-root transform maps them to the
            // nonnegative orthant of the unit sphere.
            double sum = 0.0;
            for (double v : vals) {
                if (v < 0.0) return fail("negative composition component");
                sum += v;
            }
            if (std::fabs(sum - 1.0) > 1e-6)
                return fail("composition does not sum to 1");
            Eigen::VectorXd coords((long)vals.size());
            for (size_t j = 0; j < vals.size(); ++j) coords[(long)j] = std::sqrt(vals[j]);
            coords /= coords.norm();
            obj = SpherePoint{std::move(coords)};
            break;
        }
        case Space::euclidean:
            if (vals.size() != 1) return fail("expected a single scalar column");
            obj = EuclideanScalar{vals[0]};
            break;
    }
    auto violations = validate(obj);
    if (!violations.empty()) return fail("invalid object: " + violations.front());
    return obj;
}

Dataset load_csv(const std::string& path, Space space) {
    std::ifstream in(path);
    if (!in) throw_error(errc::invalid_input, "cannot open " + path);
    std::string header;
    if (!std::getline(in, header))
        throw_error(errc::invalid_input, path + ": empty file");

    Dataset data;
    std::string row;
    int line = 1;
    while (std::getline(in, row)) {
        ++line;
        if (row.empty()) continue;
        std::vector<double> fields;
        std::stringstream ss(row);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                fields.push_back(std::stod(cell));
            } catch (const std::exception&) {
                std::ostringstream os;
                os << "line " << line << ": non-numeric field '" << cell << "'";
                throw_error(errc::invalid_input, os.str());
            }
        }
        if (fields.size() < 2) {
            std::ostringstream os;
            os << "line " << line << ": expected x plus object columns";
            throw_error(errc::invalid_input, os.str());
        }
        data.xs.push_back(fields[0]);
        data.objects.push_back(
            decode_row({fields.begin() + 1, fields.end()}, space, line));
    }
    return data;
}

Dataset load_json(const std::string& path, Space space) {
    std::ifstream in(path);
    if (!in) throw_error(errc::invalid_input, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw_error(errc::invalid_input, path + ": " + e.what());
    }
    if (j.contains("space") && space_from_name(j["space"]) != space)
        throw_error(errc::invalid_input,
                    path + ": file space tag does not match --space");
    Dataset data;
    data.xs = j.at("x").get<std::vector<double>>();
    const auto& objs = j.at("objects");
    if (objs.size() != data.xs.size())
        throw_error(errc::invalid_input, path + ": x/objects length mismatch");
    int line = 0;
    for (const auto& o : objs) {
        ++line;
        MetricObject obj = object_from_json(o, space);
        auto violations = validate(obj);
        if (!violations.empty()) {
            std::ostringstream os;
            os << "object " << line << ": " << violations.front();
            throw_error(errc::invalid_input, os.str());
        }
        data.objects.push_back(std::move(obj));
    }
    return data;
}

}  // namespace

Dataset load_dataset(const std::string& path, const std::string& format,
                     Space space) {
    std::string fmt = format;
    if (fmt.empty()) {
        auto dot = path.rfind('.');
        fmt = dot == std::string::npos ? "csv" : path.substr(dot + 1);
    }
    if (fmt == "csv") return load_csv(path, space);
    if (fmt == "json") return load_json(path, space);
    throw_error(errc::invalid_input, "unknown format: " + fmt);
}

nlohmann::json object_to_json(const MetricObject& obj) {
    nlohmann::json j;
    if (const auto* q = std::get_if<QuantileDensity>(&obj)) {
        j = std::vector<double>(q->values.begin(), q->values.end());
    } else if (const auto* s = std::get_if<SpherePoint>(&obj)) {
        j = std::vector<double>(s->coords.begin(), s->coords.end());
    } else if (const auto* e = std::get_if<EuclideanScalar>(&obj)) {
        j = e->value;
    } else {
        const Eigen::MatrixXd& m = std::holds_alternative<CovMatrix>(obj)
                                       ? std::get<CovMatrix>(obj).entries
                                       : std::get<NetworkLaplacian>(obj).entries;
        for (int r = 0; r < m.rows(); ++r) {
            std::vector<double> row(m.cols());
            for (int c = 0; c < m.cols(); ++c) row[c] = m(r, c);
            j.push_back(row);
        }
    }
    return j;
}

MetricObject object_from_json(const nlohmann::json& j, Space space) {
    switch (space) {
        case Space::euclidean:
            return EuclideanScalar{j.get<double>()};
        case Space::density:
        case Space::sphere: {
            auto vals = j.get<std::vector<double>>();
            Eigen::VectorXd v =
                Eigen::Map<const Eigen::VectorXd>(vals.data(), (long)vals.size());
            if (space == Space::density) return QuantileDensity{std::move(v)};
            return SpherePoint{std::move(v)};
        }
        case Space::covariance:
        case Space::network: {
            auto rows = j.get<std::vector<std::vector<double>>>();
            int p = (int)rows.size();
            Eigen::MatrixXd m(p, p);
            for (int r = 0; r < p; ++r) {
                if ((int)rows[r].size() != p)
                    throw_error(errc::invalid_input, "ragged matrix rows");
                for (int c = 0; c < p; ++c) m(r, c) = rows[r][c];
            }
            if (space == Space::covariance) return CovMatrix{std::move(m)};
            return NetworkLaplacian{std::move(m)};
        }
    }
    throw_error(errc::invalid_input, "unknown space tag");
}

nlohmann::json result_to_json(const TestResult& res) {
    return nlohmann::json{
        {"t_n", res.t_n},
        {"p_value", res.p_value},
        {"f_n", res.f_n},
        {"u_n_scaled", res.u_n_scaled},
        {"v_plus", res.v_plus},
        {"v_minus", res.v_minus},
        {"v_pooled", res.v_pooled},
        {"sigma_plus_sq", res.sigma_plus_sq},
        {"sigma_minus_sq", res.sigma_minus_sq},
        {"mean_plus", object_to_json(res.mean_plus)},
        {"mean_minus", object_to_json(res.mean_minus)},
        {"mean_pooled", object_to_json(res.mean_pooled)},
        {"h_mean", res.h_mean},
        {"h_var", res.h_var},
        {"f_x_hat", res.f_x_hat},
        {"n_left", res.n_left},
        {"n_right", res.n_right},
        {"sigma_clamped", res.sigma_clamped},
    };
}

TestResult result_from_json(const nlohmann::json& j, Space space) {
    TestResult res;
    res.t_n = j.at("t_n");
    res.p_value = j.at("p_value");
    res.f_n = j.at("f_n");
    res.u_n_scaled = j.at("u_n_scaled");
    res.v_plus = j.at("v_plus");
    res.v_minus = j.at("v_minus");
    res.v_pooled = j.at("v_pooled");
    res.sigma_plus_sq = j.at("sigma_plus_sq");
    res.sigma_minus_sq = j.at("sigma_minus_sq");
    res.mean_plus = object_from_json(j.at("mean_plus"), space);
    res.mean_minus = object_from_json(j.at("mean_minus"), space);
    res.mean_pooled = object_from_json(j.at("mean_pooled"), space);
    res.h_mean = j.at("h_mean");
    res.h_var = j.at("h_var");
    res.f_x_hat = j.at("f_x_hat");
    res.n_left = j.at("n_left");
    res.n_right = j.at("n_right");
    res.sigma_clamped = j.at("sigma_clamped");
    return res;
}

}  // namespace fjump::io
