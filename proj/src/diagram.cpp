#include "klr/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace klr {

namespace {

constexpr int kColWidth = 4;

struct Canvas {
    std::vector<std::string> rows;  // built bottom-up
    int strands;

    explicit Canvas(int n) : strands(n) {}

    std::string blank() const { return std::string(static_cast<size_t>(strands) * kColWidth, ' '); }

    void straight_row() {
        std::string row = blank();
        for (int s = 0; s < strands; ++s) row[static_cast<size_t>(s) * kColWidth + 1] = '|';
        rows.push_back(row);
    }

    void label_row(const Seq& seq, const std::vector<std::string>& labels) {
        std::string row = blank();
        for (int s = 0; s < strands; ++s) {
            const std::string& lab = labels[static_cast<size_t>(seq[static_cast<size_t>(s)])];
            for (size_t c = 0; c < lab.size() && c + 1 < kColWidth; ++c) {
                row[static_cast<size_t>(s) * kColWidth + c] = lab[c];
            }
        }
        rows.push_back(row);
    }

    void dot(int strand) {
        std::string row = blank();
        for (int s = 0; s < strands; ++s) row[static_cast<size_t>(s) * kColWidth + 1] = '|';
        row[static_cast<size_t>(strand) * kColWidth + 1] = '*';
        rows.push_back(row);
    }

    void crossing(int r, char mark) {
        auto base = [this] {
            std::string row = blank();
            for (int s = 0; s < strands; ++s) row[static_cast<size_t>(s) * kColWidth + 1] = '|';
            return row;
        };
        size_t a = static_cast<size_t>(r) * kColWidth + 1;
        size_t b = static_cast<size_t>(r + 1) * kColWidth + 1;
        size_t mid = (a + b) / 2;
        std::string lower = base();
        lower[a] = '\\';
        lower[b] = '/';
        std::string center = base();
        center[a] = ' ';
        center[b] = ' ';
        center[mid] = mark;
        std::string upper = base();
        upper[a] = '/';
        upper[b] = '\\';
        rows.push_back(lower);
        rows.push_back(center);
        rows.push_back(upper);
    }

    std::string finish() const {
        std::ostringstream os;
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) os << *it << "\n";
        return os.str();
    }
};

char atom_mark(Atom::Kind k) {
    switch (k) {
        case Atom::Kind::Tau: return 'X';
        case Atom::Kind::Psi: return 'S';
        case Atom::Kind::PsiTilde: return 'Z';
        default: return '?';
    }
}

}  // namespace

std::string render_diagram(const GeneratorWord& word, const Quiver& quiver,
                           const DoubledQuiver* doubling) {
    // source sequence from the rightmost idempotent
    Seq seq;
    bool found = false;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (it->kind == Atom::Kind::E) {
            seq = it->seq;
            found = true;
            break;
        }
    }
    if (!found) throw value_error("diagram rendering needs an idempotent in the word");

    const int d = static_cast<int>(seq.size());
    if (!doubling) {
        Canvas canvas(d);
        canvas.label_row(seq, quiver.labels());
        Seq cur = seq;
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            switch (it->kind) {
                case Atom::Kind::E: break;
                case Atom::Kind::X: canvas.dot(it->index); break;
                default:
                    canvas.crossing(it->index, atom_mark(it->kind));
                    cur = permute_seq(Perm::transposition(d, it->index), cur);
                    break;
            }
        }
        canvas.straight_row();
        canvas.label_row(cur, quiver.labels());
        return canvas.finish();
    }

    // doubled rendering: parallel pairs for doubled strands, dots on the
    // first strand of a pair, crossings through the hat-letter table
    const DoubledQuiver& dq = *doubling;
    auto rdict = [&dq](const Seq& s) {
        std::vector<int> out;
        int pos = 0;
        for (Vertex v : s) {
            out.push_back(pos);
            pos += dq.in_i1(v) ? 2 : 1;
        }
        return out;
    };
    Seq cur = seq;
    Seq phi = dq.phi_seq(cur);
    const int dbar = static_cast<int>(phi.size());
    Canvas canvas(dbar);
    canvas.label_row(phi, dq.doubled().labels());
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        std::vector<int> rp = rdict(cur);
        switch (it->kind) {
            case Atom::Kind::E: break;
            case Atom::Kind::X: canvas.dot(rp[static_cast<size_t>(it->index)]); break;
            default: {
                int r = it->index;
                int p = rp[static_cast<size_t>(r)];
                bool a1 = dq.in_i1(cur[static_cast<size_t>(r)]);
                bool b1 = dq.in_i1(cur[static_cast<size_t>(r) + 1]);
                std::vector<int> hat;
                if (!a1 && !b1) hat = {p};
                else if (a1 && !b1) hat = {p, p + 1};
                else if (!a1 && b1) hat = {p + 1, p};
                else hat = {p + 1, p, p + 2, p + 1};
                char mark = atom_mark(it->kind);
                for (auto h = hat.rbegin(); h != hat.rend(); ++h) canvas.crossing(*h, mark);
                cur = permute_seq(Perm::transposition(d, r), cur);
                break;
            }
        }
    }
    canvas.straight_row();
    canvas.label_row(dq.phi_seq(cur), dq.doubled().labels());
    return canvas.finish();
}

}  // namespace klr
