from flask import request
import jinja2


@app.route("/render_html")
def render_html():
    context = {}
    template_name = request.args.get("template")
    if template_name is None:
        return abort(404)
    with open("templates/" + template_name) as f:
        template = jinja2.Template(f.read())
    return template.render(context)
