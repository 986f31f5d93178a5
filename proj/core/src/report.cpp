#include "ordeval/report.hpp"

#include <json.hpp>

#include "ordeval/canonical_json.hpp"

namespace ordeval {
namespace {

using canon::JValue;
using njson = nlohmann::json;

JValue scale_json(const Scale& s) {
    JValue v = JValue::object();
    v["max"] = s.max;
    v["min"] = s.min;
    return v;
}

JValue cell_json(const ReportCell& cell) {
    JValue v = JValue::object();
    if (cell.box) {
        JValue box = JValue::object();
        box["median"] = cell.box->median;
        box["q1"] = cell.box->q1;
        box["q3"] = cell.box->q3;
        box["whisker_high"] = cell.box->whisker_high;
        box["whisker_low"] = cell.box->whisker_low;
        v["box"] = std::move(box);
    } else {
        v["box"] = nullptr;
    }
    v["pair_count"] = cell.pair_count;
    if (cell.probability)
        v["probability"] = *cell.probability;
    else
        v["probability"] = nullptr;
    v["significant"] = cell.significant;
    v["undefined_resamples"] = cell.undefined_resamples;
    return v;
}

JValue learner_json(const CVReport& cv) {
    JValue v = JValue::object();
    v["exact_accuracy"] = cv.exact_accuracy;
    JValue folds = JValue::array();
    for (const FoldStats& f : cv.fold_stats) {
        JValue fj = JValue::object();
        fj["exact"] = f.exact;
        fj["n"] = f.n;
        fj["within_one"] = f.within_one;
        folds.push_back(std::move(fj));
    }
    v["fold_stats"] = std::move(folds);
    v["majority_baseline"] = cv.majority_baseline;
    v["within_one_accuracy"] = cv.within_one_accuracy;
    return v;
}

JValue cv_json(const ReportCV& cv) {
    if (cv.naive_bayes.folds != cv.tree.folds || cv.naive_bayes.seed != cv.tree.seed)
        throw InconsistentProducts("learners cross-validated with different folds or seed");
    JValue v = JValue::object();
    v["folds"] = cv.naive_bayes.folds;
    v["naive_bayes"] = learner_json(cv.naive_bayes);
    v["seed"] = cv.naive_bayes.seed;
    v["selected"] = cv.selected;
    v["tree"] = learner_json(cv.tree);
    return v;
}

JValue unit_json(const ReportRankedUnit& unit) {
    JValue v = JValue::object();
    JValue dist = JValue::array();
    for (double p : unit.distribution) dist.push_back(p);
    v["distribution"] = std::move(dist);
    v["predicted"] = unit.predicted;
    v["row_id"] = unit.row_id;
    return v;
}

Scale parse_scale(const njson& j) {
    return Scale{j.at("min").get<int>(), j.at("max").get<int>()};
}

ReportCell parse_cell(const njson& j) {
    ReportCell cell;
    const njson& box = j.at("box");
    if (!box.is_null()) {
        ConfidenceBox b;
        b.median = box.at("median").get<double>();
        b.q1 = box.at("q1").get<double>();
        b.q3 = box.at("q3").get<double>();
        b.whisker_high = box.at("whisker_high").get<double>();
        b.whisker_low = box.at("whisker_low").get<double>();
        cell.box = b;
    }
    cell.pair_count = j.at("pair_count").get<std::size_t>();
    if (!j.at("probability").is_null())
        cell.probability = j.at("probability").get<double>();
    cell.significant = j.at("significant").get<bool>();
    cell.undefined_resamples = j.at("undefined_resamples").get<std::size_t>();
    return cell;
}

CVReport parse_learner(const njson& j, int folds, std::uint64_t seed) {
    CVReport cv;
    cv.folds = folds;
    cv.seed = seed;
    cv.exact_accuracy = j.at("exact_accuracy").get<double>();
    cv.majority_baseline = j.at("majority_baseline").get<double>();
    cv.within_one_accuracy = j.at("within_one_accuracy").get<double>();
    for (const njson& fj : j.at("fold_stats")) {
        FoldStats f;
        f.exact = fj.at("exact").get<std::size_t>();
        f.n = fj.at("n").get<std::size_t>();
        f.within_one = fj.at("within_one").get<std::size_t>();
        cv.fold_stats.push_back(f);
    }
    return cv;
}

}  // namespace

const ReportAttribute& EvaluationReport::attribute(std::string_view name) const {
    for (const ReportAttribute& a : attributes)
        if (a.name == name) return a;
    throw UnknownAttribute(std::string(name));
}

EvaluationReport build_report(const OrdinalDataset& full, const ReportParams& params,
                              const std::vector<AttributeProfile>& profiles,
                              const std::vector<AttributeSignificance>& significance,
                              const std::vector<KanoClassification>& kano,
                              const std::vector<ThresholdHit>& thresholds,
                              std::optional<ReportCV> cv,
                              std::optional<std::vector<ReportRankedUnit>> ranking) {
    if (profiles.size() != significance.size() || profiles.size() != kano.size() ||
        profiles.size() != full.n_attributes())
        throw InconsistentProducts("products cover different attribute counts");
    for (std::size_t a = 0; a < profiles.size(); ++a) {
        if (profiles[a].name != significance[a].name ||
            profiles[a].name != kano[a].name ||
            profiles[a].name != full.attribute_names[a])
            throw InconsistentProducts("products disagree on attribute names");
        if (profiles[a].up.size() != significance[a].up.size() ||
            profiles[a].down.size() != significance[a].down.size())
            throw InconsistentProducts("cell counts disagree for " + profiles[a].name);
    }

    EvaluationReport report;
    report.params = params;
    report.dataset.n_rows = full.n_rows();
    for (const CellValue& r : full.responses)
        (r ? report.dataset.n_labeled : report.dataset.n_unlabeled) += 1;
    report.dataset.response = {full.response_name, full.response_scale};
    for (std::size_t a = 0; a < full.n_attributes(); ++a)
        report.dataset.attributes.push_back(
            {full.attribute_names[a], full.scales[a]});

    auto make_cell = [](const Tally& t, const CellSignificance& cs) {
        ReportCell cell;
        if (t.defined()) cell.probability = t.ratio();
        cell.pair_count = t.pairs;
        cell.box = cs.box;
        cell.undefined_resamples = cs.undefined_count;
        cell.significant = cs.significant;
        return cell;
    };

    for (std::size_t a = 0; a < profiles.size(); ++a) {
        const AttributeProfile& p = profiles[a];
        const AttributeSignificance& sig = significance[a];
        ReportAttribute ra;
        ra.name = p.name;
        ra.scale = p.scale;
        for (std::size_t s = 0; s < p.up.size(); ++s)
            ra.up.push_back(make_cell(p.up[s], sig.up[s]));
        for (std::size_t s = 0; s < p.down.size(); ++s)
            ra.down.push_back(make_cell(p.down[s], sig.down[s]));
        ra.up_aggregate = make_cell(p.up_aggregate, sig.up_aggregate);
        ra.down_aggregate = make_cell(p.down_aggregate, sig.down_aggregate);
        ra.kano = kano_label(kano[a].type);
        report.attributes.push_back(std::move(ra));
    }

    for (const ThresholdHit& hit : thresholds) {
        bool known = false;
        for (const ReportAttribute& a : report.attributes)
            known = known || a.name == hit.attribute;
        if (!known)
            throw InconsistentProducts("threshold references unknown attribute: " +
                                       hit.attribute);
        ReportThreshold t;
        t.attribute = hit.attribute;
        t.value = hit.value;
        t.direction = hit.direction == Direction::down ? "down" : "up";
        t.probability = hit.probability;
        t.pair_count = hit.pair_count;
        t.significant = hit.significant;
        report.thresholds.push_back(std::move(t));
    }

    report.cv = std::move(cv);
    report.ranking = std::move(ranking);
    return report;
}

std::string write_report(const EvaluationReport& report) {
    JValue root = JValue::object();

    JValue attrs = JValue::array();
    for (const ReportAttribute& a : report.attributes) {
        JValue aj = JValue::object();
        JValue up = JValue::array(), down = JValue::array();
        for (const ReportCell& c : a.up) up.push_back(cell_json(c));
        for (const ReportCell& c : a.down) down.push_back(cell_json(c));
        aj["down"] = std::move(down);
        aj["down_aggregate"] = cell_json(a.down_aggregate);
        aj["kano"] = a.kano;
        aj["name"] = a.name;
        aj["scale"] = scale_json(a.scale);
        aj["up"] = std::move(up);
        aj["up_aggregate"] = cell_json(a.up_aggregate);
        attrs.push_back(std::move(aj));
    }
    root["attributes"] = std::move(attrs);

    root["cv"] = report.cv ? cv_json(*report.cv) : JValue(nullptr);

    JValue ds = JValue::object();
    JValue cols = JValue::array();
    for (const ReportColumn& c : report.dataset.attributes) {
        JValue cj = JValue::object();
        cj["name"] = c.name;
        cj["scale"] = scale_json(c.scale);
        cols.push_back(std::move(cj));
    }
    ds["attributes"] = std::move(cols);
    ds["n_labeled"] = report.dataset.n_labeled;
    ds["n_rows"] = report.dataset.n_rows;
    ds["n_unlabeled"] = report.dataset.n_unlabeled;
    JValue resp = JValue::object();
    resp["name"] = report.dataset.response.name;
    resp["scale"] = scale_json(report.dataset.response.scale);
    ds["response"] = std::move(resp);
    root["dataset"] = std::move(ds);

    JValue params = JValue::object();
    params["alpha"] = report.params.alpha;
    params["k"] = report.params.k;
    params["resamples"] = report.params.resamples;
    params["seed"] = report.params.seed;
    params["tau"] = report.params.tau;
    root["params"] = std::move(params);

    if (report.ranking) {
        JValue ranking = JValue::array();
        for (const ReportRankedUnit& u : *report.ranking)
            ranking.push_back(unit_json(u));
        root["ranking"] = std::move(ranking);
    } else {
        root["ranking"] = nullptr;
    }

    root["schema_version"] = report.schema_version;

    JValue thresholds = JValue::array();
    for (const ReportThreshold& t : report.thresholds) {
        JValue tj = JValue::object();
        tj["attribute"] = t.attribute;
        tj["direction"] = t.direction;
        tj["pair_count"] = t.pair_count;
        tj["probability"] = t.probability;
        tj["significant"] = t.significant;
        tj["value"] = t.value;
        thresholds.push_back(std::move(tj));
    }
    root["thresholds"] = std::move(thresholds);

    return root.dump();
}

EvaluationReport parse_report(std::string_view json_text) {
    njson j = njson::parse(json_text);
    EvaluationReport report;
    report.schema_version = j.at("schema_version").get<int>();

    const njson& ds = j.at("dataset");
    report.dataset.n_labeled = ds.at("n_labeled").get<std::size_t>();
    report.dataset.n_rows = ds.at("n_rows").get<std::size_t>();
    report.dataset.n_unlabeled = ds.at("n_unlabeled").get<std::size_t>();
    report.dataset.response.name = ds.at("response").at("name").get<std::string>();
    report.dataset.response.scale = parse_scale(ds.at("response").at("scale"));
    for (const njson& cj : ds.at("attributes"))
        report.dataset.attributes.push_back(
            {cj.at("name").get<std::string>(), parse_scale(cj.at("scale"))});

    const njson& params = j.at("params");
    report.params.alpha = params.at("alpha").get<double>();
    report.params.k = params.at("k").get<int>();
    report.params.resamples = params.at("resamples").get<int>();
    report.params.seed = params.at("seed").get<std::uint64_t>();
    report.params.tau = params.at("tau").get<double>();

    for (const njson& aj : j.at("attributes")) {
        ReportAttribute a;
        a.name = aj.at("name").get<std::string>();
        a.scale = parse_scale(aj.at("scale"));
        a.kano = aj.at("kano").get<std::string>();
        for (const njson& cj : aj.at("up")) a.up.push_back(parse_cell(cj));
        for (const njson& cj : aj.at("down")) a.down.push_back(parse_cell(cj));
        a.up_aggregate = parse_cell(aj.at("up_aggregate"));
        a.down_aggregate = parse_cell(aj.at("down_aggregate"));
        report.attributes.push_back(std::move(a));
    }

    for (const njson& tj : j.at("thresholds")) {
        ReportThreshold t;
        t.attribute = tj.at("attribute").get<std::string>();
        t.direction = tj.at("direction").get<std::string>();
        t.pair_count = tj.at("pair_count").get<std::size_t>();
        t.probability = tj.at("probability").get<double>();
        t.significant = tj.at("significant").get<bool>();
        t.value = tj.at("value").get<int>();
        report.thresholds.push_back(std::move(t));
    }

    const njson& cv = j.at("cv");
    if (!cv.is_null()) {
        ReportCV rc;
        int folds = cv.at("folds").get<int>();
        auto seed = cv.at("seed").get<std::uint64_t>();
        rc.naive_bayes = parse_learner(cv.at("naive_bayes"), folds, seed);
        rc.tree = parse_learner(cv.at("tree"), folds, seed);
        rc.selected = cv.at("selected").get<std::string>();
        report.cv = std::move(rc);
    }

    const njson& ranking = j.at("ranking");
    if (!ranking.is_null()) {
        std::vector<ReportRankedUnit> units;
        for (const njson& uj : ranking) {
            ReportRankedUnit u;
            u.row_id = uj.at("row_id").get<std::string>();
            u.predicted = uj.at("predicted").get<int>();
            for (const njson& d : uj.at("distribution"))
                u.distribution.push_back(d.get<double>());
            units.push_back(std::move(u));
        }
        report.ranking = std::move(units);
    }
    return report;
}

std::string write_cv_report(const ReportCV& cv) {
    JValue root = JValue::object();
    root["cv"] = cv_json(cv);
    root["schema_version"] = 1;
    return root.dump();
}

std::string write_ranking(const std::vector<ReportRankedUnit>& ranking) {
    JValue root = JValue::object();
    JValue units = JValue::array();
    for (const ReportRankedUnit& u : ranking) units.push_back(unit_json(u));
    root["ranking"] = std::move(units);
    root["schema_version"] = 1;
    return root.dump();
}

}  // namespace ordeval
