# Generated by Django 5.2.5 on 2026-10-18 09:30

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=200)),
                ('algorithm', models.CharField(max_length=20)),
                ('seed', models.IntegerField(default=0)),
                ('config', models.JSONField(default=dict)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('completed', 'Completed'), ('failed', 'Failed')], default='pending', max_length=10)),
                ('rounds', models.PositiveIntegerField(default=0)),
                ('total_uploads', models.PositiveBigIntegerField(blank=True, null=True)),
                ('total_grad_evals', models.PositiveBigIntegerField(blank=True, null=True)),
                ('final_loss', models.FloatField(blank=True, null=True)),
                ('monitor_violations', models.PositiveIntegerField(default=0)),
                ('metrics_path', models.CharField(blank=True, max_length=500)),
                ('error_message', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'db_table': 'experiments_experimentrun',
                'ordering': ['-created_at'],
            },
        ),
    ]
