#include "fraudml/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fraudml/error.hpp"

namespace fraudml {

using json = nlohmann::ordered_json;

namespace {

json matrix_to_json(const Matrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    std::vector<double> data = j.at("data").get<std::vector<double>>();
    if (data.size() != m.rows() * m.cols()) throw DataError("model file: matrix size mismatch");
    m.data() = std::move(data);
    return m;
}

// Trees travel as nested records so the file stands on its own; the flat
// layout is rebuilt with the same allocation order the trainer uses
// (children claimed together, left subtree first).
json tree_node_to_json(const std::vector<detail::TreeNode>& nodes, std::uint32_t at) {
    const detail::TreeNode& node = nodes[at];
    json j{{"n0", node.n0}, {"n1", node.n1}};
    if (!node.is_leaf()) {
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = tree_node_to_json(nodes, node.left);
        j["right"] = tree_node_to_json(nodes, node.right);
    }
    return j;
}

void tree_node_from_json(const json& j, std::vector<detail::TreeNode>& nodes, std::uint32_t at) {
    nodes[at].n0 = j.at("n0").get<std::uint64_t>();
    nodes[at].n1 = j.at("n1").get<std::uint64_t>();
    if (!j.contains("feature")) return;
    const auto left = static_cast<std::uint32_t>(nodes.size());
    nodes.emplace_back();
    nodes.emplace_back();
    nodes[at].feature = j.at("feature").get<int>();
    nodes[at].threshold = j.at("threshold").get<double>();
    nodes[at].left = left;
    nodes[at].right = left + 1;
    tree_node_from_json(j.at("left"), nodes, left);
    tree_node_from_json(j.at("right"), nodes, left + 1);
}

json tree_to_json(const DecisionTree& tree) {
    return json{{"params",
                 {{"max_depth", tree.params().max_depth},
                  {"min_samples_split", tree.params().min_samples_split},
                  {"seed", tree.params().seed}}},
                {"n_features", tree.n_features()},
                {"root", tree_node_to_json(tree.nodes(), 0)}};
}

DecisionTree tree_from_json(const json& j) {
    DTParams params;
    params.max_depth = j.at("params").at("max_depth").get<int>();
    params.min_samples_split = j.at("params").at("min_samples_split").get<std::size_t>();
    params.seed = j.at("params").at("seed").get<std::uint64_t>();
    std::vector<detail::TreeNode> nodes(1);
    tree_node_from_json(j.at("root"), nodes, 0);
    return DecisionTree::from_parts(std::move(nodes), j.at("n_features").get<std::size_t>(), params);
}

json forest_to_json(const RandomForest& forest) {
    json trees = json::array();
    for (const DecisionTree& tree : forest.trees()) trees.push_back(tree_to_json(tree));
    return json{{"params",
                 {{"n_trees", forest.params().n_trees},
                  {"max_features", forest.params().max_features},
                  {"bootstrap", forest.params().bootstrap},
                  {"max_depth", forest.params().max_depth},
                  {"min_samples_split", forest.params().min_samples_split},
                  {"seed", forest.params().seed}}},
                {"n_features", forest.n_features()},
                {"trees", trees}};
}

RandomForest forest_from_json(const json& j) {
    RFParams params;
    const json& p = j.at("params");
    params.n_trees = p.at("n_trees").get<std::size_t>();
    params.max_features = p.at("max_features").get<std::size_t>();
    params.bootstrap = p.at("bootstrap").get<bool>();
    params.max_depth = p.at("max_depth").get<int>();
    params.min_samples_split = p.at("min_samples_split").get<std::size_t>();
    params.seed = p.at("seed").get<std::uint64_t>();
    std::vector<DecisionTree> trees;
    for (const json& t : j.at("trees")) trees.push_back(tree_from_json(t));
    return RandomForest::from_parts(std::move(trees), j.at("n_features").get<std::size_t>(), params);
}

json knn_to_json(const KnnModel& model) {
    return json{{"k", model.params().k},
                {"features", matrix_to_json(model.features())},
                {"labels", model.labels()}};
}

KnnModel knn_from_json(const json& j) {
    KNNParams params;
    params.k = j.at("k").get<std::size_t>();
    return KnnModel::from_parts(matrix_from_json(j.at("features")),
                                j.at("labels").get<std::vector<int>>(), params);
}

json mlp_to_json(const MlpModel& model) {
    json layers = json::array();
    for (const MlpLayer& layer : model.layers())
        layers.push_back(json{{"weights", matrix_to_json(layer.weights)}, {"bias", layer.bias}});
    return json{{"params",
                 {{"hidden_layers", model.params().hidden_layers},
                  {"learning_rate", model.params().learning_rate},
                  {"epochs", model.params().epochs},
                  {"batch_size", model.params().batch_size},
                  {"seed", model.params().seed}}},
                {"layers", layers}};
}

MlpModel mlp_from_json(const json& j) {
    MLPParams params;
    const json& p = j.at("params");
    params.hidden_layers = p.at("hidden_layers").get<std::vector<std::size_t>>();
    params.learning_rate = p.at("learning_rate").get<double>();
    params.epochs = p.at("epochs").get<int>();
    params.batch_size = p.at("batch_size").get<std::size_t>();
    params.seed = p.at("seed").get<std::uint64_t>();
    std::vector<MlpLayer> layers;
    for (const json& l : j.at("layers"))
        layers.push_back(MlpLayer{matrix_from_json(l.at("weights")),
                                  l.at("bias").get<std::vector<double>>()});
    return MlpModel::from_parts(std::move(layers), params);
}

json body_to_json(const SavedModel& model) {
    json j;
    j["format_version"] = model.format_version;
    j["label_column"] = model.label_column;
    j["feature_names"] = model.feature_names;
    j["label_categories"] = model.label_map.categories();
    j["scaler"] = {{"means", model.scaler.means},
                   {"stds", model.scaler.stds},
                   {"n_fitted", model.scaler.n_fitted}};
    j["threshold"] = model.threshold;
    j["seed"] = model.seed;
    j["weights"] = {{"dt", model.weights[0]},
                    {"rf", model.weights[1]},
                    {"knn", model.weights[2]},
                    {"mlp", model.weights[3]}};
    j["models"] = {{"dt", tree_to_json(std::get<DecisionTree>(model.models[0]))},
                   {"rf", forest_to_json(std::get<RandomForest>(model.models[1]))},
                   {"knn", knn_to_json(std::get<KnnModel>(model.models[2]))},
                   {"mlp", mlp_to_json(std::get<MlpModel>(model.models[3]))}};
    return j;
}

std::string checksum_hex(const std::string& body) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(body)));
    return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string model_to_json(const SavedModel& model) {
    for (std::size_t m = 0; m < 4; ++m)
        if (model_kind(model.models[m]) != kModelKinds[m])
            throw UsageError("save_model: models must be in dt, rf, knn, mlp order");
    json j = body_to_json(model);
    j["checksum"] = checksum_hex(body_to_json(model).dump());
    return j.dump(2) + "\n";
}

SavedModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: ") + e.what());
    }
    try {
        const int version = j.at("format_version").get<int>();
        if (version != 1)
            throw DataError("model file: unsupported format_version " + std::to_string(version));

        // Verify bytes before trusting structure: the parsed document minus
        // the checksum key re-dumps exactly as the body the writer hashed, so
        // any edit surfaces as corruption instead of a random missing-key error.
        const std::string stored = j.at("checksum").get<std::string>();
        json body = j;
        body.erase("checksum");
        if (checksum_hex(body.dump()) != stored)
            throw DataError("model file: checksum mismatch (file corrupted or edited)");

        SavedModel model;
        model.format_version = version;
        model.label_column = j.at("label_column").get<std::string>();
        model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        for (const auto& category : j.at("label_categories").get<std::vector<std::string>>())
            model.label_map.add(category);
        model.scaler.means = j.at("scaler").at("means").get<std::vector<double>>();
        model.scaler.stds = j.at("scaler").at("stds").get<std::vector<double>>();
        model.scaler.n_fitted = j.at("scaler").at("n_fitted").get<std::size_t>();
        model.threshold = j.at("threshold").get<double>();
        model.seed = j.at("seed").get<std::uint64_t>();
        model.weights[0] = j.at("weights").at("dt").get<double>();
        model.weights[1] = j.at("weights").at("rf").get<double>();
        model.weights[2] = j.at("weights").at("knn").get<double>();
        model.weights[3] = j.at("weights").at("mlp").get<double>();
        model.models[0] = tree_from_json(j.at("models").at("dt"));
        model.models[1] = forest_from_json(j.at("models").at("rf"));
        model.models[2] = knn_from_json(j.at("models").at("knn"));
        model.models[3] = mlp_from_json(j.at("models").at("mlp"));

        if (model.scaler.means.size() != model.feature_names.size())
            throw DataError("model file: scaler width != feature count");
        return model;
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: ") + e.what());
    }
}

void save_model(const SavedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file '" + path + "'");
    out << model_to_json(model);
    if (!out.flush()) throw DataError("failed writing model file '" + path + "'");
}

SavedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read model file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

}  // namespace fraudml
