from flask import request


@app.route("/render_html")
def render_html():
    context = {}
    template_name = request.args.get("template")
    if template_name is None:
        return abort(404)
    with open("templates/" + template_name) as f:
        alias = __import__("jinja2")
        template = alias.Template(f.read())
    return template.render(context)
