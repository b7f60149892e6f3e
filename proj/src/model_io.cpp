#include "fanwatch/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fanwatch {

namespace {

constexpr const char* kHeader = "# fanwatch-format v1";

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_columns(std::ostream& out, const std::vector<std::string>& names)
{
    out << "n_columns = " << names.size() << '\n';
    for (std::size_t i = 0; i < names.size(); ++i)
        out << "column_" << i << " = " << names[i] << '\n';
}

class Reader {
public:
    explicit Reader(const std::string& path) : path_(path), in_(path)
    {
        if (!in_)
            throw std::runtime_error("cannot open '" + path + "'");
        std::string line;
        if (!std::getline(in_, line) || line != kHeader)
            throw std::runtime_error("'" + path + "' is not a fanwatch-format v1 file");
    }

    // next "key = value" line; skips blanks
    bool next(std::string& key, std::string& value)
    {
        std::string line;
        while (std::getline(in_, line)) {
            if (line.empty())
                continue;
            const auto eq = line.find(" = ");
            if (eq == std::string::npos)
                throw std::runtime_error("malformed line in " + path_ + ": " + line);
            key = line.substr(0, eq);
            value = line.substr(eq + 3);
            return true;
        }
        return false;
    }

    std::string expect(const std::string& want)
    {
        std::string key;
        std::string value;
        if (!next(key, value) || key != want)
            throw std::runtime_error("expected '" + want + "' in " + path_);
        return value;
    }

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream in_;
};

std::vector<std::string> read_columns(Reader& r)
{
    const std::size_t n = std::stoul(r.expect("n_columns"));
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i)
        names[i] = r.expect("column_" + std::to_string(i));
    return names;
}

void save_linear(std::ostream& out, const LinearModel& m)
{
    out << "model = linear\n";
    write_columns(out, m.column_names);
    out << "intercept = " << fmt(m.intercept) << '\n';
    for (std::size_t i = 0; i < m.coefficients.size(); ++i)
        out << "coefficient_" << i << " = " << fmt(m.coefficients[i]) << '\n';
}

void save_forest(std::ostream& out, const ForestModel& m)
{
    out << "model = forest\n";
    out << "n_trees = " << m.params.n_trees << '\n';
    out << "row_fraction = " << fmt(m.params.row_fraction) << '\n';
    out << "feature_fraction = " << fmt(m.params.feature_fraction) << '\n';
    out << "min_leaf = " << m.params.min_leaf << '\n';
    out << "max_depth = " << m.params.max_depth << '\n';
    out << "seed = " << m.params.seed << '\n';
    write_columns(out, m.column_names);
    for (std::size_t t = 0; t < m.trees.size(); ++t) {
        const auto& tree = m.trees[t];
        out << "tree_" << t << "_nodes = " << tree.nodes.size() << '\n';
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const TreeNode& n = tree.nodes[i];
            out << "tree_" << t << "_node_" << i << " = ";
            if (n.is_leaf())
                out << "leaf " << fmt(n.value) << ' ' << n.count << '\n';
            else
                out << "internal " << n.feature << ' ' << fmt(n.threshold) << ' ' << n.left
                    << ' ' << n.right << ' ' << fmt(n.value) << ' ' << n.count << '\n';
        }
    }
}

LinearModel load_linear(Reader& r)
{
    LinearModel m;
    m.column_names = read_columns(r);
    m.intercept = std::stod(r.expect("intercept"));
    m.coefficients.resize(m.column_names.size());
    for (std::size_t i = 0; i < m.coefficients.size(); ++i)
        m.coefficients[i] = std::stod(r.expect("coefficient_" + std::to_string(i)));
    return m;
}

ForestModel load_forest(Reader& r)
{
    ForestModel m;
    m.params.n_trees = std::stoi(r.expect("n_trees"));
    m.params.row_fraction = std::stod(r.expect("row_fraction"));
    m.params.feature_fraction = std::stod(r.expect("feature_fraction"));
    m.params.min_leaf = std::stoi(r.expect("min_leaf"));
    m.params.max_depth = std::stoi(r.expect("max_depth"));
    m.params.seed = std::stoull(r.expect("seed"));
    m.column_names = read_columns(r);
    m.trees.resize(static_cast<std::size_t>(m.params.n_trees));
    for (std::size_t t = 0; t < m.trees.size(); ++t) {
        const std::size_t n_nodes =
            std::stoul(r.expect("tree_" + std::to_string(t) + "_nodes"));
        m.trees[t].nodes.resize(n_nodes);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            const std::string value =
                r.expect("tree_" + std::to_string(t) + "_node_" + std::to_string(i));
            std::istringstream ss(value);
            std::string kind;
            ss >> kind;
            TreeNode& node = m.trees[t].nodes[i];
            if (kind == "leaf") {
                ss >> node.value >> node.count;
            } else if (kind == "internal") {
                ss >> node.feature >> node.threshold >> node.left >> node.right >> node.value >>
                    node.count;
            } else {
                throw std::runtime_error("bad node kind '" + kind + "' in " + r.path());
            }
            if (!ss)
                throw std::runtime_error("malformed node in " + r.path());
        }
    }
    return m;
}

} // namespace

void save_model(const std::string& path, const Model& m)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << kHeader << '\n';
    if (std::holds_alternative<LinearModel>(m))
        save_linear(out, std::get<LinearModel>(m));
    else
        save_forest(out, std::get<ForestModel>(m));
}

Model load_model(const std::string& path)
{
    Reader r(path);
    const std::string kind = r.expect("model");
    if (kind == "linear")
        return load_linear(r);
    if (kind == "forest")
        return load_forest(r);
    throw std::runtime_error("unknown model kind '" + kind + "' in " + path);
}

} // namespace fanwatch
